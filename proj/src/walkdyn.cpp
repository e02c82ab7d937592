#include "rsm/walkdyn.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "rsm/errors.hpp"

namespace rsm {

bool WalkTrace::escaped() const {
  for (std::size_t k : final_clusters) {
    if (std::binary_search(initial_clusters.begin(), initial_clusters.end(), k)) return false;
  }
  return true;
}

WalkIndex::WalkIndex(const Instance& inst) : inst_(&inst), frozen_(inst.n) {
  for (std::size_t k = 0; k < inst.clusters.size(); ++k) {
    const Subcube& c = inst.clusters[k];
    for (std::size_t i = 0; i < inst.n; ++i) {
      if (c.frozen_mask.get(i)) {
        frozen_[i].push_back({static_cast<std::uint32_t>(k), c.frozen_values.get(i)});
      }
    }
  }
}

WalkTrace random_walk(const WalkIndex& index, const Configuration& start, std::size_t steps,
                      Rng& rng, bool record_path) {
  const Instance& inst = index.instance();
  if (start.size() != inst.n) throw DomainError("random_walk: start has wrong length");
  const std::size_t m = inst.clusters.size();

  // mismatch[k] = number of frozen coordinates of cluster k the walker violates.
  std::vector<std::uint32_t> mismatch(m);
  std::vector<char> initial(m, 0);
  std::size_t holders = 0;
  std::size_t initial_holders = 0;
  WalkTrace trace;
  for (std::size_t k = 0; k < m; ++k) {
    const Subcube& c = inst.clusters[k];
    mismatch[k] = static_cast<std::uint32_t>(masked_mismatch(start, c.frozen_values, c.frozen_mask));
    if (mismatch[k] == 0) {
      ++holders;
      initial[k] = 1;
      trace.initial_clusters.push_back(k);
    }
  }
  if (holders == 0) throw DomainError("random_walk: start is not a solution");
  initial_holders = holders;

  Configuration x = start;
  if (record_path) trace.path.push_back(x);

  auto apply_flip = [&](std::size_t var, bool old_value) {
    for (const WalkIndex::Entry& e : index.frozen_at(var)) {
      std::uint32_t& mm = mismatch[e.cluster];
      if (e.value == old_value) {
        // Was matching, now violated.
        if (mm == 0) {
          --holders;
          if (initial[e.cluster]) --initial_holders;
        }
        ++mm;
      } else {
        --mm;
        if (mm == 0) {
          ++holders;
          if (initial[e.cluster]) ++initial_holders;
        }
      }
    }
  };

  for (std::size_t step = 1; step <= steps; ++step) {
    const auto var = static_cast<std::size_t>(rng.below(inst.n));
    const bool old_value = x.get(var);
    apply_flip(var, old_value);
    if (holders == 0) {
      apply_flip(var, !old_value);
    } else {
      x.flip(var);
      ++trace.accepted;
    }
    if (trace.first_exit_step < 0 && initial_holders == 0) {
      trace.first_exit_step = static_cast<long long>(step);
    }
    if (record_path) trace.path.push_back(x);
  }
  trace.steps = steps;
  for (std::size_t k = 0; k < m; ++k) {
    if (mismatch[k] == 0) trace.final_clusters.push_back(k);
  }
  trace.final_config = std::move(x);
  return trace;
}

WalkTrace random_walk(const Instance& inst, const Configuration& start, std::size_t steps,
                      Rng& rng, bool record_path) {
  return random_walk(WalkIndex(inst), start, steps, rng, record_path);
}

std::size_t walk_length(std::size_t n, double coefficient, double exponent) {
  if (!(coefficient > 0.0) || !(exponent >= 0.0)) throw DomainError("walk_length: bad c or d");
  return static_cast<std::size_t>(std::llround(coefficient * std::pow(static_cast<double>(n), exponent)));
}

double partition_log_probability(std::size_t n, std::size_t free_a, std::size_t free_b,
                                 std::size_t a) {
  const auto N = static_cast<long long>(n);
  const auto S = static_cast<long long>(free_a);
  const auto Sp = static_cast<long long>(free_b);
  const auto A = static_cast<long long>(a);
  const long long cells[4] = {A, S - A, N - Sp - A, Sp - S + A};
  if (S > N || Sp > N) throw DomainError("partition_log_probability: free count exceeds n");
  for (long long c : cells) {
    if (c < 0) throw DomainError("partition_log_probability: infeasible cell count");
  }
  auto lf = [](long long k) { return std::lgamma(static_cast<double>(k) + 1.0); };
  double ln_q = lf(N);
  for (long long c : cells) ln_q -= lf(c);
  ln_q -= lf(N) - lf(S) - lf(N - S);
  ln_q -= lf(N) - lf(Sp) - lf(N - Sp);
  return ln_q / kLn2;
}

double escape_exponent(const ModelPoint& point, double s_prime) {
  return complexity(point, s_prime) + s_prime - 1.0;
}

Maximum max_escape_exponent(const ModelPoint& point, const Tolerances& tol) {
  point.validate();
  if (point.alpha > 1.0) throw UnsatError("alpha > 1: no clusters");
  if (!(point.p > 0.0 && point.p < 1.0)) throw DomainError("max_escape_exponent: p must lie in (0,1)");
  const double peak = 1.0 - point.p;
  auto sigma = [&](double s) { return complexity(point, s); };
  const double hi = largest_cluster_entropy(point, tol);
  const double lo = sigma(0.0) >= 0.0 ? 0.0 : find_root(sigma, 0.0, peak, tol);
  return maximize_1d([&](double s) { return escape_exponent(point, s); }, lo, hi, tol);
}

ProportionInterval wilson_interval(std::size_t successes, std::size_t trials, double z) {
  if (trials == 0) return {0.0, 0.0, 1.0};
  const auto n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double centre = (phat + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z * std::sqrt(phat * (1 - phat) / n + z2 / (4 * n * n)) / (1 + z2 / n);
  return {phat, std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

EscapeStats escape_experiment(const Instance& inst, std::size_t trials, std::size_t steps,
                              std::uint64_t seed, unsigned threads) {
  if (inst.clusters.empty()) throw UnsatError("escape_experiment: instance has no clusters");
  const WalkIndex index(inst);
  const SolutionSampler sampler(inst);
  EscapeStats stats;
  stats.trials = trials;
  stats.records.resize(trials);

  auto run_range = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t t = begin; t < trials; t += stride) {
      Rng rng = Rng::stream(seed, t);
      const Configuration start = sampler(rng);
      const WalkTrace tr = random_walk(index, start, steps, rng);
      stats.records[t] = {t, tr.first_exit_step, tr.acceptance_rate(), tr.escaped()};
    }
  };
  threads = std::max(1U, threads);
  if (threads == 1) {
    run_range(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(run_range, w, threads);
  }

  double acc = 0.0;
  for (const TrialRecord& r : stats.records) {
    if (r.escaped) ++stats.escaped_at_end;
    if (r.first_exit_step >= 0) ++stats.exited_within;
    acc += r.acceptance_rate;
  }
  stats.mean_acceptance = trials == 0 ? 0.0 : acc / static_cast<double>(trials);
  stats.end_fraction = wilson_interval(stats.escaped_at_end, trials);
  stats.within_fraction = wilson_interval(stats.exited_within, trials);
  return stats;
}

}  // namespace rsm
