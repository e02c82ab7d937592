#pragma once

// Scalar toolkit shared by every module. All entropies are in bits.

#include <cmath>
#include <limits>
#include <utility>

#include "rsm/errors.hpp"

namespace rsm {

struct Tolerances {
  double root_tol = 1e-12;
  double opt_tol = 1e-10;
  int grid_points = 4096;

  /// Throws DomainError unless every tolerance is positive and grid_points >= 64.
  void validate() const;
};

inline constexpr double kLn2 = 0.69314718055994530942;

/// x * log2(x) with the 0 log 0 = 0 convention.
inline double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

double binary_entropy(double x);

/// dH/dx = log2((1-x)/x); infinite at the ends.
double binary_entropy_derivative(double x);

/// D(x || y) in bits. Inputs that would produce +inf raise DomainError.
double binary_kl(double x, double y);

/// Partial derivative of D(x || y) with respect to x: log2(x(1-y) / ((1-x)y)).
double binary_kl_derivative(double x, double y);

/// Solution delta <= y of D(delta || y) = x, clamped to 0 once x >= -log2(1-y).
double delta_inverse(double x, double y, const Tolerances& tol = {});

struct Maximum {
  double argmax;
  double value;
};

/// Bracketed root of a continuous f on [lo, hi].
///
/// Illinois false-position steps, with a forced bisection whenever an
/// iteration fails to halve the bracket. Stops once the bracket is narrower
/// than tol.root_tol or an exact zero is hit.
template <class F>
double find_root(F&& f, double lo, double hi, const Tolerances& tol = {}) {
  if (!(lo <= hi)) throw DomainError("find_root: lo > hi");
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (std::isnan(flo) || std::isnan(fhi) || (flo > 0.0) == (fhi > 0.0)) {
    throw NoBracketError("find_root: no sign change on interval");
  }
  int side = 0;  // which end was retained last time (Illinois weighting)
  for (int iter = 0; iter < 400 && hi - lo > tol.root_tol; ++iter) {
    const double width = hi - lo;
    double x = (lo * fhi - hi * flo) / (fhi - flo);
    if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
    double fx = f(x);
    if (fx == 0.0) return x;
    if ((fx > 0.0) == (fhi > 0.0)) {
      hi = x;
      fhi = fx;
      if (side == -1) flo *= 0.5;
      side = -1;
    } else {
      lo = x;
      flo = fx;
      if (side == +1) fhi *= 0.5;
      side = +1;
    }
    if (hi - lo > 0.5 * width) {
      const double mid = 0.5 * (lo + hi);
      const double fm = f(mid);
      if (fm == 0.0) return mid;
      if ((fm > 0.0) == (fhi > 0.0)) {
        hi = mid;
        fhi = fm;
      } else {
        lo = mid;
        flo = fm;
      }
      side = 0;
    }
  }
  return 0.5 * (lo + hi);
}

/// Dense grid scan followed by golden-section refinement around the best
/// grid cell. Handles maxima sitting on either boundary.
template <class F>
Maximum maximize_1d(F&& f, double lo, double hi, const Tolerances& tol = {}) {
  if (!(lo < hi)) {
    if (lo == hi) return {lo, f(lo)};
    throw DomainError("maximize_1d: empty interval");
  }
  const int n = tol.grid_points;
  const double h = (hi - lo) / n;
  int best = 0;
  double best_val = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n; ++i) {
    const double x = i == n ? hi : lo + i * h;
    const double v = f(x);
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  double a = best == 0 ? lo : lo + (best - 1) * h;
  double b = best >= n - 1 ? hi : lo + (best + 1) * h;
  constexpr double kInvPhi = 0.61803398874989484820;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > tol.opt_tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    }
  }
  Maximum out{best == n ? hi : lo + best * h, best_val};
  const double xm = 0.5 * (a + b);
  const double fm = f(xm);
  if (fm > out.value) out = {xm, fm};
  if (f1 > out.value) out = {x1, f1};
  if (f2 > out.value) out = {x2, f2};
  return out;
}

}  // namespace rsm
