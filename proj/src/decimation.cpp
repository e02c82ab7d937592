#include "rsm/decimation.hpp"

#include <algorithm>
#include <cmath>

#include "rsm/analytic.hpp"
#include "rsm/errors.hpp"

namespace rsm {

namespace {

constexpr std::size_t kIeClusterLimit = 12;

double max_bias_of(const std::vector<double>& belief, const DecimationState& state) {
  double bias = 0.0;
  for (std::size_t i : state.unfixed_variables()) bias = std::max(bias, std::abs(belief[i] - 0.5));
  return bias;
}

std::vector<double> estimator_beliefs(const DecimationState& state, Estimator estimator) {
  if (estimator == Estimator::Belief) return belief_marginals(state);
  const auto surveys = survey_marginals(state);
  std::vector<double> out;
  out.reserve(surveys.size());
  for (const Survey& s : surveys) out.push_back(survey_belief(s));
  return out;
}

}  // namespace

DecimationState::DecimationState(const Instance& inst)
    : inst_(&inst), assignment_(inst.n, kUnfixed) {
  compatible_.resize(inst.clusters.size());
  for (std::size_t k = 0; k < compatible_.size(); ++k) compatible_[k] = k;
}

std::vector<std::size_t> DecimationState::unfixed_variables() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignment_.size(); ++i) {
    if (assignment_[i] == kUnfixed) out.push_back(i);
  }
  return out;
}

Subcube DecimationState::fixed_cube() const {
  Subcube c = Subcube::whole(inst_->n);
  for (std::size_t i = 0; i < assignment_.size(); ++i) {
    if (assignment_[i] != kUnfixed) {
      c.frozen_mask.set(i, true);
      c.frozen_values.set(i, assignment_[i] == 1);
    }
  }
  return c;
}

void DecimationState::fix(std::size_t var, bool value) {
  if (var >= assignment_.size()) throw DomainError("fix: variable out of range");
  if (assignment_[var] != kUnfixed) throw DomainError("fix: variable already fixed");
  assignment_[var] = value ? 1 : 0;
  ++fixed_count_;
  std::erase_if(compatible_, [&](std::size_t k) {
    const Subcube& c = inst_->clusters[k];
    return c.frozen_mask.get(var) && c.frozen_values.get(var) != value;
  });
}

std::vector<double> belief_marginals(const DecimationState& state) {
  const Instance& inst = state.instance();
  if (state.compatible_clusters().empty()) {
    throw UnsatError("belief_marginals: no solution is compatible with the fixed variables");
  }
  const Subcube fixed = state.fixed_cube();
  std::vector<Subcube> restricted;
  restricted.reserve(state.compatible_clusters().size());
  for (std::size_t k : state.compatible_clusters()) {
    // Compatibility guarantees a non-empty intersection.
    restricted.push_back(*intersect(inst.clusters[k], fixed));
  }
  UnionCounts counts;
  if (restricted.size() <= kIeClusterLimit || inst.n > 26) {
    counts = union_counts_ie(restricted, inst.n);
  } else {
    counts = union_counts_bitmap(restricted, inst.n);
  }
  std::vector<double> mu(inst.n);
  const auto total = static_cast<double>(counts.total);
  for (std::size_t i = 0; i < inst.n; ++i) mu[i] = static_cast<double>(counts.ones[i]) / total;
  return mu;
}

std::vector<Survey> survey_marginals(const DecimationState& state) {
  const Instance& inst = state.instance();
  const auto compatible = state.compatible_clusters();
  if (compatible.empty()) throw UnsatError("survey_marginals: no compatible clusters");
  std::vector<std::size_t> zeros(inst.n, 0);
  std::vector<std::size_t> ones(inst.n, 0);
  for (std::size_t k : compatible) {
    const Subcube& c = inst.clusters[k];
    for (std::size_t i = 0; i < inst.n; ++i) {
      if (c.frozen_mask.get(i)) ++(c.frozen_values.get(i) ? ones[i] : zeros[i]);
    }
  }
  const auto m = compatible.size();
  std::vector<Survey> out(inst.n);
  for (std::size_t i = 0; i < inst.n; ++i) {
    const std::size_t free = m - zeros[i] - ones[i];
    out[i].frozen0 = static_cast<double>(zeros[i]) / static_cast<double>(m);
    out[i].frozen1 = static_cast<double>(ones[i]) / static_cast<double>(m);
    out[i].free = static_cast<double>(free) / static_cast<double>(m);
  }
  return out;
}

StepRecord decimate_step(DecimationState& state, Estimator estimator, Rng& rng) {
  const auto unfixed = state.unfixed_variables();
  if (unfixed.empty()) throw DomainError("decimate_step: every variable is already fixed");
  const auto belief = estimator_beliefs(state, estimator);
  StepRecord rec;
  rec.step = state.fixed_count();
  rec.max_bias = max_bias_of(belief, state);
  rec.variable = unfixed[rng.below(unfixed.size())];
  rec.value = rng.uniform() < belief[rec.variable];
  state.fix(rec.variable, rec.value);
  rec.n_compatible_clusters = state.compatible_clusters().size();
  return rec;
}

DecimationRun run_decimation(const Instance& inst, Estimator estimator, Rng& rng,
                             std::size_t batch) {
  if (batch == 0) throw DomainError("run_decimation: batch must be >= 1");
  DecimationRun run;
  DecimationState state(inst);
  if (state.compatible_clusters().empty()) {
    run.failure = "instance has no clusters";
    return run;
  }
  while (!state.complete()) {
    const auto belief = estimator_beliefs(state, estimator);
    const double bias = max_bias_of(belief, state);
    for (std::size_t b = 0; b < batch && !state.complete(); ++b) {
      const auto unfixed = state.unfixed_variables();
      StepRecord rec;
      rec.step = state.fixed_count();
      rec.max_bias = bias;
      rec.variable = unfixed[rng.below(unfixed.size())];
      rec.value = rng.uniform() < belief[rec.variable];
      state.fix(rec.variable, rec.value);
      rec.n_compatible_clusters = state.compatible_clusters().size();
      run.steps.push_back(rec);
      if (state.compatible_clusters().empty()) {
        run.failure = "dead end: no cluster compatible with the fixed variables";
        return run;
      }
    }
  }
  run.assignment = state.fixed_cube().frozen_values;
  run.success = is_solution(run.assignment, inst);
  if (!run.success) run.failure = "final assignment is not a solution";
  return run;
}

double reduced_alpha(double alpha, double p, double t) {
  if (!(t >= 0.0 && t < 1.0)) throw DomainError("reduced_alpha: t must lie in [0,1)");
  return (alpha - t * thresholds(p).alpha_d) / (1.0 - t);
}

double reduced_complexity(double alpha, double p, double t, double s) {
  return 1.0 - reduced_alpha(alpha, p, t) - binary_kl(s, 1.0 - p);
}

TransitionTimes transition_times(double alpha, double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("transition_times: p must lie in (0,1)");
  const Thresholds th = thresholds(p);
  if (alpha < th.alpha_d || alpha > 1.0) {
    throw DomainError("transition_times: requires alpha_d <= alpha <= 1");
  }
  const double t_c = std::clamp((th.alpha_c - alpha) / (th.alpha_c - th.alpha_d), 0.0, 1.0);
  return {t_c, (1.0 - alpha) / (1.0 - th.alpha_d)};
}

}  // namespace rsm
