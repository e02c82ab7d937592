#pragma once

// Single-spin-flip random walk on the solution set and cluster escape.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rsm/analytic.hpp"
#include "rsm/instance.hpp"
#include "rsm/rng.hpp"

namespace rsm {

struct WalkTrace {
  std::size_t steps = 0;
  std::size_t accepted = 0;
  std::vector<std::size_t> initial_clusters;
  std::vector<std::size_t> final_clusters;
  /// First step after which no initial cluster contains the walker, or -1.
  long long first_exit_step = -1;
  Configuration final_config;
  /// Every visited configuration, start included; filled only on request.
  std::vector<Configuration> path;

  double acceptance_rate() const {
    return steps == 0 ? 0.0 : static_cast<double>(accepted) / static_cast<double>(steps);
  }
  /// Final containing set disjoint from the initial one.
  bool escaped() const;
};

/// Per-variable lists of the clusters frozen there, shared by many walks on
/// one instance.
class WalkIndex {
 public:
  explicit WalkIndex(const Instance& inst);

  struct Entry {
    std::uint32_t cluster;
    bool value;
  };

  const Instance& instance() const { return *inst_; }
  const std::vector<Entry>& frozen_at(std::size_t var) const { return frozen_[var]; }

 private:
  const Instance* inst_;
  std::vector<std::vector<Entry>> frozen_;
};

/// Lazy walk: pick a uniform variable, flip it, keep the flip only if the
/// result is still a solution. Stationary law is uniform on S.
WalkTrace random_walk(const WalkIndex& index, const Configuration& start, std::size_t steps,
                      Rng& rng, bool record_path = false);
WalkTrace random_walk(const Instance& inst, const Configuration& start, std::size_t steps,
                      Rng& rng, bool record_path = false);

/// Steps c * n^d.
std::size_t walk_length(std::size_t n, double coefficient, double exponent);

/// log2 q(a): probability that A (free count S) and B (free count S') share
/// exactly A variables free in A and frozen in B, as a multinomial ratio.
/// Throws DomainError when a cell count is negative.
double partition_log_probability(std::size_t n, std::size_t free_a, std::size_t free_b,
                                 std::size_t a);

/// Sigma(s') + s' - 1, the union-bound exponent for reaching clusters of
/// entropy s'.
double escape_exponent(const ModelPoint& point, double s_prime);

/// Maximum of escape_exponent over the region Sigma(s') >= 0.
Maximum max_escape_exponent(const ModelPoint& point, const Tolerances& tol = {});

struct ProportionInterval {
  double estimate;
  double lower;
  double upper;
};

/// Wilson score interval at z standard deviations.
ProportionInterval wilson_interval(std::size_t successes, std::size_t trials, double z = 1.96);

struct TrialRecord {
  std::size_t trial;
  long long first_exit_step;
  double acceptance_rate;
  bool escaped;
};

struct EscapeStats {
  std::size_t trials = 0;
  std::size_t escaped_at_end = 0;
  std::size_t exited_within = 0;
  ProportionInterval end_fraction{};
  ProportionInterval within_fraction{};
  double mean_acceptance = 0.0;
  std::vector<TrialRecord> records;
};

/// `trials` independent walks of `steps` steps, each from a uniform solution.
/// Trial k uses stream k of `seed`, so results do not depend on `threads`.
EscapeStats escape_experiment(const Instance& inst, std::size_t trials, std::size_t steps,
                              std::uint64_t seed, unsigned threads = 1);

}  // namespace rsm
