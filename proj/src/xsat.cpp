#include "rsm/xsat.hpp"

#include <cmath>

#include "rsm/errors.hpp"

namespace rsm {

namespace {

void require_open_p(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("p must lie in (0,1)");
}

}  // namespace

double pair_count_exponent(const ModelPoint& point, double x) {
  point.validate();
  require_open_p(point.p);
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("pair_count_exponent: x outside [0,1]");
  return 2.0 * (1.0 - point.alpha) - binary_kl(x, 0.5 * point.p * point.p);
}

DistanceSpectrum distance_spectrum(const ModelPoint& point, const Tolerances& tol) {
  point.validate();
  require_open_p(point.p);
  if (point.alpha > 1.0) throw UnsatError("alpha > 1: no clusters");
  const double x1 = largest_cluster_entropy(point, tol);
  const double q = 0.5 * point.p * point.p;
  double x2 = 0.0;
  // Clusters at distance zero exist (overlapping pairs) once s2(0) >= 0.
  if (pair_count_exponent(point, 0.0) < 0.0) {
    x2 = find_root([&](double x) { return pair_count_exponent(point, x); }, 0.0, q, tol);
  }
  return {x1, x2, 1.0 - x2};
}

bool xsat_degenerate(double p) { return 1.0 - p >= 0.5 * p * p; }

AuxiliaryThresholds auxiliary_thresholds(double p, const Tolerances& tol) {
  require_open_p(p);
  if (xsat_degenerate(p)) {
    throw DegenerateRegimeError("x-sat threshold curve is degenerate for 1 - p >= p^2/2");
  }
  const double q = 0.5 * p * p;
  const double x0 = find_root(
      [&](double x) { return binary_kl(x, q) - 2.0 * binary_kl(x, 1.0 - p); }, 1.0 - p, q, tol);
  return {x0, 1.0 + 0.5 * std::log2(1.0 - q), 1.0 - binary_kl(x0, 1.0 - p)};
}

double xsat_threshold(double x, double p, double x0) {
  require_open_p(p);
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("xsat_threshold: x outside [0,1]");
  if (xsat_degenerate(p)) {
    throw DegenerateRegimeError("x-sat threshold curve is degenerate for 1 - p >= p^2/2");
  }
  const double q = 0.5 * p * p;
  if (x <= 1.0 - p) return 1.0;
  if (x <= x0) return 1.0 - binary_kl(x, 1.0 - p);
  if (x <= q) return 1.0 - 0.5 * binary_kl(x, q);
  if (x <= 1.0 - q) return 1.0;
  return 1.0 - 0.5 * binary_kl(1.0 - x, q);
}

double xsat_threshold(double x, double p, const Tolerances& tol) {
  return xsat_threshold(x, p, auxiliary_thresholds(p, tol).x0);
}

}  // namespace rsm
