#pragma once

// Idealized decimation driven by exact belief or survey estimators.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rsm/instance.hpp"
#include "rsm/rng.hpp"

namespace rsm {

enum class Estimator { Belief, Survey };

/// Variables fixed so far plus the clusters still consistent with them.
/// Holds a reference to the instance, which must outlive the state.
class DecimationState {
 public:
  static constexpr std::int8_t kUnfixed = -1;

  explicit DecimationState(const Instance& inst);

  const Instance& instance() const { return *inst_; }
  std::span<const std::int8_t> assignment() const { return assignment_; }
  std::span<const std::size_t> compatible_clusters() const { return compatible_; }
  std::size_t fixed_count() const { return fixed_count_; }
  double t() const { return static_cast<double>(fixed_count_) / static_cast<double>(inst_->n); }
  bool complete() const { return fixed_count_ == inst_->n; }

  std::vector<std::size_t> unfixed_variables() const;

  /// The subcube of configurations agreeing with every fixed variable.
  Subcube fixed_cube() const;

  /// Fix `var` and drop clusters frozen to the opposite value.
  void fix(std::size_t var, bool value);

 private:
  const Instance* inst_;
  std::vector<std::int8_t> assignment_;
  std::vector<std::size_t> compatible_;
  std::size_t fixed_count_ = 0;
};

/// mu_i(1) under the uniform measure on solutions compatible with the fixed
/// variables. Exact: pruned inclusion-exclusion for few clusters, otherwise a
/// 2^n membership bitmap (n <= 26).
std::vector<double> belief_marginals(const DecimationState& state);

/// Fractions of compatible clusters with variable i frozen to 0, frozen to 1,
/// or free. Clusters are weighted uniformly, not by size.
struct Survey {
  double frozen0 = 0.0;
  double frozen1 = 0.0;
  double free = 0.0;
};
std::vector<Survey> survey_marginals(const DecimationState& state);

/// Probability of fixing a variable to 1 implied by a survey.
inline double survey_belief(const Survey& s) { return s.frozen1 + 0.5 * s.free; }

struct StepRecord {
  std::size_t step = 0;
  std::size_t variable = 0;
  bool value = false;
  std::size_t n_compatible_clusters = 0;
  /// max over unfixed variables of |P(sigma_i = 1) - 1/2| before the step.
  double max_bias = 0.0;
};

/// Fix one uniformly chosen unfixed variable by sampling the estimator.
StepRecord decimate_step(DecimationState& state, Estimator estimator, Rng& rng);

struct DecimationRun {
  std::vector<StepRecord> steps;
  bool success = false;
  Configuration assignment;
  std::string failure;
};

/// Decimate until every variable is fixed. `batch` variables are fixed per
/// estimator evaluation. A dead end aborts the run with a report; there is
/// no backtracking.
DecimationRun run_decimation(const Instance& inst, Estimator estimator, Rng& rng,
                             std::size_t batch = 1);

/// (alpha - t alpha_d) / (1 - t).
double reduced_alpha(double alpha, double p, double t);

/// 1 - reduced_alpha - D(s || 1-p), the rescaled complexity after tN steps.
double reduced_complexity(double alpha, double p, double t, double s);

struct TransitionTimes {
  double t_c;
  double t_s;
};

/// t_c = (alpha_c - alpha)/(alpha_c - alpha_d) clamped to [0,1],
/// t_s = (1 - alpha)/(1 - alpha_d). Requires alpha_d <= alpha <= 1.
TransitionTimes transition_times(double alpha, double p);

}  // namespace rsm
