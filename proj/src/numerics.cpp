#include "rsm/numerics.hpp"

#include <string>

namespace rsm {

void Tolerances::validate() const {
  if (!(root_tol > 0.0) || !(opt_tol > 0.0)) {
    throw DomainError("tolerances must be strictly positive");
  }
  if (grid_points < 64) throw DomainError("grid_points must be >= 64");
}

namespace {

void require_probability(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError(std::string(what) + ": probability outside [0,1]");
  }
}

}  // namespace

double binary_entropy(double x) {
  require_probability(x, "binary_entropy");
  return -xlog2x(x) - xlog2x(1.0 - x);
}

double binary_entropy_derivative(double x) {
  require_probability(x, "binary_entropy_derivative");
  if (x == 0.0) return std::numeric_limits<double>::infinity();
  if (x == 1.0) return -std::numeric_limits<double>::infinity();
  return std::log2((1.0 - x) / x);
}

double binary_kl(double x, double y) {
  require_probability(x, "binary_kl");
  require_probability(y, "binary_kl");
  if (x == y) return 0.0;
  // Either term diverges when y sits on a boundary the mass of x does not.
  if ((y == 0.0 && x > 0.0) || (y == 1.0 && x < 1.0)) {
    throw DomainError("binary_kl: divergence is infinite");
  }
  double d = 0.0;
  if (x > 0.0) d += x * std::log2(x / y);
  if (x < 1.0) d += (1.0 - x) * std::log2((1.0 - x) / (1.0 - y));
  return d > 0.0 ? d : 0.0;
}

double binary_kl_derivative(double x, double y) {
  require_probability(x, "binary_kl_derivative");
  if (!(y > 0.0 && y < 1.0)) throw DomainError("binary_kl_derivative: y must lie in (0,1)");
  if (x == 0.0) return -std::numeric_limits<double>::infinity();
  if (x == 1.0) return std::numeric_limits<double>::infinity();
  return std::log2(x * (1.0 - y) / ((1.0 - x) * y));
}

double delta_inverse(double x, double y, const Tolerances& tol) {
  if (!(x >= 0.0)) throw DomainError("delta_inverse: x must be >= 0");
  if (!(y > 0.0 && y < 1.0)) throw DomainError("delta_inverse: y must lie in (0,1)");
  if (x == 0.0) return y;
  if (x >= -std::log2(1.0 - y)) return 0.0;
  return find_root([&](double d) { return binary_kl(d, y) - x; }, 0.0, y, tol);
}

}  // namespace rsm
