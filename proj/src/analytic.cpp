#include "rsm/analytic.hpp"

#include <cmath>
#include <vector>

#include "rsm/errors.hpp"

namespace rsm {

void ModelPoint::validate() const {
  if (!(alpha >= 0.0)) throw DomainError("ModelPoint: alpha must be >= 0");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("ModelPoint: p must lie in [0,1]");
}

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::Liquid:
      return "liquid";
    case Phase::Clustered:
      return "clustered";
    case Phase::Condensed:
      return "condensed";
    case Phase::Unsat:
      return "unsat";
  }
  return "unknown";
}

double complexity(const ModelPoint& point, double s) {
  point.validate();
  return 1.0 - point.alpha - binary_kl(s, 1.0 - point.p);
}

double complexity_slope(const ModelPoint& point, double s) {
  point.validate();
  return -binary_kl_derivative(s, 1.0 - point.p);
}

Thresholds thresholds(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("thresholds: p must lie in [0,1]");
  const double alpha_d = std::log2(2.0 - p);
  return {alpha_d, p / (2.0 - p) + alpha_d, 1.0};
}

double tangent_entropy(double p) { return 2.0 * (1.0 - p) / (2.0 - p); }

double largest_cluster_entropy(const ModelPoint& point, const Tolerances& tol) {
  point.validate();
  if (point.alpha > 1.0) throw UnsatError("alpha > 1: no clusters");
  if (point.p == 1.0) return 0.0;
  if (point.p == 0.0) return 1.0;
  if (complexity(point, 1.0) >= 0.0) return 1.0;
  return find_root([&](double s) { return complexity(point, s); }, 1.0 - point.p, 1.0, tol);
}

double total_entropy(const ModelPoint& point, const Tolerances& tol) {
  point.validate();
  if (point.alpha > 1.0) throw UnsatError("alpha > 1: no solutions");
  if (point.p == 0.0) return 1.0;
  const Thresholds th = thresholds(point.p);
  if (point.alpha < th.alpha_d) return 1.0;
  if (point.alpha <= th.alpha_c) return 1.0 - point.alpha + th.alpha_d;
  return largest_cluster_entropy(point, tol);
}

Phase phase(const ModelPoint& point) {
  point.validate();
  if (point.alpha > 1.0) return Phase::Unsat;
  const Thresholds th = thresholds(point.p);
  if (point.alpha >= th.alpha_c) return Phase::Condensed;
  if (point.alpha >= th.alpha_d) return Phase::Clustered;
  return Phase::Liquid;
}

DominantStats dominant_stats(const ModelPoint& point, const Tolerances& tol) {
  point.validate();
  if (point.alpha > 1.0) throw UnsatError("alpha > 1: no clusters");
  if (phase(point) != Phase::Condensed) {
    const double s = tangent_entropy(point.p);
    return {s, point.p / (2.0 - point.p) + std::log2(2.0 - point.p) - point.alpha, 1.0};
  }
  const double s_m = largest_cluster_entropy(point, tol);
  // p in {0,1}: a single kind of cluster, one of which carries everything.
  if (point.p == 0.0 || point.p == 1.0) return {s_m, 0.0, 0.0};
  const double m = s_m >= 1.0 ? 0.0 : binary_kl_derivative(s_m, 1.0 - point.p);
  return {s_m, complexity(point, s_m), m};
}

PhaseReport phase_report(const ModelPoint& point, const Tolerances& tol) {
  point.validate();
  PhaseReport r{};
  r.point = point;
  r.thresholds = thresholds(point.p);
  r.phase = phase(point);
  if (r.phase == Phase::Unsat) {
    r.s_tot = 0.0;
    r.s_star = 0.0;
    r.sigma_star = 0.0;
    r.m = 0.0;
    return r;
  }
  r.s_tot = total_entropy(point, tol);
  const DominantStats d = dominant_stats(point, tol);
  r.s_star = d.s_star;
  r.sigma_star = d.sigma_star;
  r.m = d.m;
  return r;
}

OverlapDistribution overlap_distribution(const ModelPoint& point, const Tolerances& tol) {
  point.validate();
  if (point.alpha > 1.0) throw UnsatError("alpha > 1: no solutions");
  if (phase(point) != Phase::Condensed) return {1.0, std::nullopt, 1.0, 0.0};
  const double m = dominant_stats(point, tol).m;
  return {m, 1.0 - total_entropy(point, tol), m, 1.0 - m};
}

double k_point_correlation(const Instance& inst, std::size_t k,
                           std::span<const std::size_t> variables) {
  if (k != variables.size()) throw DomainError("k_point_correlation: k != number of variables");
  if (k == 0 || k > 20) throw DomainError("k_point_correlation: k must lie in [1, 20]");
  for (std::size_t v : variables) {
    if (v >= inst.n) throw DomainError("k_point_correlation: variable index out of range");
  }
  const auto solutions = enumerate_solutions(inst);
  if (solutions.empty()) throw UnsatError("k_point_correlation: instance has no solutions");
  if (k == 1) return 0.0;

  std::vector<double> joint(std::size_t{1} << k, 0.0);
  std::vector<double> marginal_one(k, 0.0);
  for (const std::uint64_t x : solutions) {
    std::size_t cell = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if ((x >> variables[j]) & 1U) {
        cell |= std::size_t{1} << j;
        marginal_one[j] += 1.0;
      }
    }
    joint[cell] += 1.0;
  }
  const auto total = static_cast<double>(solutions.size());
  for (double& m : marginal_one) m /= total;
  double sum = 0.0;
  for (std::size_t cell = 0; cell < joint.size(); ++cell) {
    double product = 1.0;
    for (std::size_t j = 0; j < k; ++j) {
      product *= ((cell >> j) & 1U) ? marginal_one[j] : 1.0 - marginal_one[j];
    }
    sum += std::abs(joint[cell] / total - product);
  }
  return sum;
}

double LargeKMapping::epsilon() const {
  if (k < 2) throw DomainError("LargeKMapping: k must be >= 2");
  return problem == LargeKProblem::Sat ? std::ldexp(1.0, -(k + 1)) : 1.0 / (2.0 * k);
}

double LargeKMapping::constraint_density() const {
  if (k < 2) throw DomainError("LargeKMapping: k must be >= 2");
  if (problem == LargeKProblem::Sat) {
    return std::ldexp(1.0, k) * kLn2 - kLn2 / 2.0 + gamma / 2.0;
  }
  const double lnk = std::log(static_cast<double>(k));
  return k * lnk - lnk / 2.0 + gamma / 2.0;
}

ModelPoint large_k_map(const LargeKMapping& mapping) {
  const double eps = mapping.epsilon();
  return {1.0 + eps * (1.0 + mapping.gamma) / kLn2, 1.0 - eps};
}

LargeKInverse large_k_inverse(const ModelPoint& point) {
  point.validate();
  const double eps = 1.0 - point.p;
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("large_k_inverse: p must lie in (0,1)");
  return {eps, (point.alpha - 1.0) * kLn2 / eps - 1.0};
}

double large_k_complexity(double s, double epsilon, double gamma) {
  if (!(s > 0.0)) throw DomainError("large_k_complexity: s must be > 0");
  if (!(epsilon > 0.0)) throw DomainError("large_k_complexity: epsilon must be > 0");
  return s * (1.0 - std::log(s / epsilon)) - epsilon * (2.0 + gamma);
}

}  // namespace rsm
