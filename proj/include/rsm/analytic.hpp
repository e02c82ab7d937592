#pragma once

// Closed-form thermodynamics of the random-subcube model at fixed (alpha, p).

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

#include "rsm/instance.hpp"
#include "rsm/numerics.hpp"

namespace rsm {

struct ModelPoint {
  double alpha = 0.0;
  double p = 0.0;

  /// Throws DomainError unless alpha >= 0 and p in [0, 1].
  void validate() const;
};

enum class Phase { Liquid, Clustered, Condensed, Unsat };

std::string_view to_string(Phase phase);

struct Thresholds {
  double alpha_d;
  double alpha_c;
  double alpha_s;
};

struct PhaseReport {
  ModelPoint point;
  Thresholds thresholds;
  Phase phase;
  double s_tot;
  double s_star;
  double sigma_star;
  double m;
};

/// Sigma(s) = 1 - alpha - D(s || 1-p), untruncated.
double complexity(const ModelPoint& point, double s);

/// dSigma/ds = -dD(s || 1-p)/ds.
double complexity_slope(const ModelPoint& point, double s);

Thresholds thresholds(double p);

/// 2(1-p)/(2-p), where the complexity has slope -1.
double tangent_entropy(double p);

/// Largest root of Sigma(s) = 0 (1 when Sigma(1) >= 0). Requires alpha <= 1.
double largest_cluster_entropy(const ModelPoint& point, const Tolerances& tol = {});

/// Total entropy per variable. Throws UnsatError for alpha > 1.
double total_entropy(const ModelPoint& point, const Tolerances& tol = {});

/// Phase regions are right-closed: alpha_d is clustered, alpha_c and 1 are
/// condensed, alpha > 1 is unsat.
Phase phase(const ModelPoint& point);

struct DominantStats {
  double s_star;
  double sigma_star;
  double m;
};

/// Dominant cluster entropy, their complexity, and the Poisson-Dirichlet
/// parameter m = -Sigma'(s*) (m = 1 outside the condensed phase).
DominantStats dominant_stats(const ModelPoint& point, const Tolerances& tol = {});

PhaseReport phase_report(const ModelPoint& point, const Tolerances& tol = {});

/// P(q) = w delta(q - (1 - s_tot)) + (1 - w) delta(q). Outside the condensed
/// phase w = 0. Inside, w is random with mean 1 - m.
struct OverlapDistribution {
  double zero_atom_mean_weight;
  std::optional<double> cluster_atom;
  double m;
  double mean_w;
};

OverlapDistribution overlap_distribution(const ModelPoint& point, const Tolerances& tol = {});

/// sum over x in {0,1}^k of |P(x) - prod_i P(x_i)| for the uniform measure on
/// the solutions of `inst`, restricted to `variables`. Requires n <= 24.
double k_point_correlation(const Instance& inst, std::size_t k,
                           std::span<const std::size_t> variables);

enum class LargeKProblem { Sat, Col };

struct LargeKMapping {
  LargeKProblem problem = LargeKProblem::Sat;
  int k = 2;
  double gamma = 0.0;

  /// 2^-(k+1) for SAT, 1/(2k) for COL.
  double epsilon() const;
  /// Constraints per variable M/N matching gamma.
  double constraint_density() const;
};

/// p = 1 - eps, alpha = 1 + eps (1 + gamma) / ln 2.
ModelPoint large_k_map(const LargeKMapping& mapping);

struct LargeKInverse {
  double epsilon;
  double gamma;
};

/// Inverse of the rescaling, eps = 1 - p, gamma = (alpha - 1) ln 2 / eps - 1.
LargeKInverse large_k_inverse(const ModelPoint& point);

/// Leading-order Sigma(s) ln 2 = s [1 - ln(s/eps)] - eps (2 + gamma), in nats.
double large_k_complexity(double s, double epsilon, double gamma);

}  // namespace rsm
