#pragma once

// Distance spectrum and the x-satisfiability threshold curve.

#include "rsm/analytic.hpp"
#include "rsm/numerics.hpp"

namespace rsm {

/// Per-variable distance scales: x1 largest intra-cluster distance, x2
/// smallest and x3 = 1 - x2 largest inter-cluster distance.
struct DistanceSpectrum {
  double x1;
  double x2;
  double x3;
};

/// s2(x) = 2(1 - alpha) - D(x || p^2/2), the growth rate of cluster pairs at
/// distance xN.
double pair_count_exponent(const ModelPoint& point, double x);

DistanceSpectrum distance_spectrum(const ModelPoint& point, const Tolerances& tol = {});

/// True when 1 - p >= p^2/2, where the branch intervals of the threshold
/// curve overlap and the piecewise form no longer applies.
bool xsat_degenerate(double p);

struct AuxiliaryThresholds {
  double x0;
  double alpha_sep;
  double alpha_gap;
};

/// x0 solves D(x || p^2/2) = 2 D(x || 1-p) on [1-p, p^2/2];
/// alpha_sep = 1 + log2(1 - p^2/2) / 2; alpha_gap = alpha_s(x0).
/// Throws DegenerateRegimeError when xsat_degenerate(p).
AuxiliaryThresholds auxiliary_thresholds(double p, const Tolerances& tol = {});

/// alpha_s(x), the density below which pairs of solutions at distance xN
/// exist. Branch seams belong to the left interval.
double xsat_threshold(double x, double p, const Tolerances& tol = {});

/// Same, reusing a precomputed x0.
double xsat_threshold(double x, double p, double x0);

}  // namespace rsm
