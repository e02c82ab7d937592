#include <cmath>

#include <boost/multiprecision/cpp_int.hpp>
#include <gtest/gtest.h>

#include "rsm/errors.hpp"
#include "rsm/walkdyn.hpp"

namespace {

using namespace rsm;
using boost::multiprecision::cpp_int;

cpp_int choose(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  cpp_int r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Hypergeometric oracle: B's free set is uniform among the C(n, S') subsets;
// S - a of them must fall inside A's free set.
double partition_oracle(long long n, long long S, long long Sp, long long a) {
  const cpp_int num = choose(S, S - a) * choose(n - S, Sp - S + a);
  const cpp_int den = choose(n, Sp);
  return static_cast<double>(num.convert_to<long double>() / den.convert_to<long double>());
}

TEST(Partition, MatchesExactCombinatorics) {
  for (long long n : {10LL, 40LL, 120LL}) {
    for (long long S : {0LL, n / 4, n / 2}) {
      for (long long Sp : {n / 5, n / 2, n - 1}) {
        double total = 0.0;
        for (long long a = 0; a <= S; ++a) {
          const double want = partition_oracle(n, S, Sp, a);
          if (want == 0.0) {
            EXPECT_THROW(partition_log_probability(n, S, Sp, a), DomainError);
            continue;
          }
          const double got = std::exp2(partition_log_probability(n, S, Sp, a));
          EXPECT_NEAR(got / want, 1.0, 1e-9) << n << ' ' << S << ' ' << Sp << ' ' << a;
          total += got;
        }
        EXPECT_NEAR(total, 1.0, 1e-9);
      }
    }
  }
}

TEST(Walk, StaysOnSolutions) {
  const Instance inst = generate(16, 0.7, 0.5, 4);
  ASSERT_FALSE(inst.clusters.empty());
  Rng rng(11);
  const Configuration start = sample_solution(inst, rng);
  const WalkTrace tr = random_walk(inst, start, 2000, rng, true);
  ASSERT_EQ(tr.path.size(), 2001u);
  EXPECT_EQ(tr.path.front(), start);
  EXPECT_EQ(tr.path.back(), tr.final_config);
  std::size_t moves = 0;
  long long exit = -1;
  for (std::size_t k = 0; k < tr.path.size(); ++k) {
    EXPECT_TRUE(is_solution(tr.path[k], inst));
    if (k == 0) continue;
    const std::size_t d = hamming_distance(tr.path[k - 1], tr.path[k]);
    EXPECT_LE(d, 1u);
    moves += d;
    if (exit < 0) {
      bool inside = false;
      for (std::size_t c : tr.initial_clusters) inside = inside || membership(tr.path[k], inst.clusters[c]);
      if (!inside) exit = static_cast<long long>(k);
    }
  }
  EXPECT_EQ(moves, tr.accepted);
  EXPECT_EQ(exit, tr.first_exit_step);
  EXPECT_EQ(tr.final_clusters, clusters_containing(tr.final_config, inst).indices);
}

TEST(Walk, RejectsNonSolutionStart) {
  Instance inst;
  inst.n = 3;
  inst.clusters = {Subcube::point(BitVec::from_u64(3, 5))};
  Rng rng(1);
  EXPECT_THROW(random_walk(inst, BitVec::from_u64(3, 0), 10, rng), DomainError);
  // A single point can never be left.
  const WalkTrace tr = random_walk(inst, BitVec::from_u64(3, 5), 100, rng);
  EXPECT_EQ(tr.accepted, 0u);
  EXPECT_EQ(tr.first_exit_step, -1);
}

TEST(Escape, IndependentOfThreadCount) {
  const Instance inst = generate(14, 0.65, 0.5, 8);
  const EscapeStats one = escape_experiment(inst, 64, 196, 5, 1);
  const EscapeStats four = escape_experiment(inst, 64, 196, 5, 4);
  EXPECT_EQ(one.exited_within, four.exited_within);
  EXPECT_EQ(one.escaped_at_end, four.escaped_at_end);
  for (std::size_t t = 0; t < 64; ++t) {
    EXPECT_EQ(one.records[t].first_exit_step, four.records[t].first_exit_step);
  }
}

TEST(Wilson, KnownValues) {
  const ProportionInterval ci = wilson_interval(50, 100);
  EXPECT_DOUBLE_EQ(ci.estimate, 0.5);
  EXPECT_NEAR(ci.lower, 0.4038, 1e-4);
  EXPECT_NEAR(ci.upper, 0.5962, 1e-4);
  const ProportionInterval zero = wilson_interval(0, 1000);
  EXPECT_EQ(zero.lower, 0.0);
  EXPECT_NEAR(zero.upper, 0.00383, 1e-5);
}

TEST(EscapeExponent, NegativeInClusteredPhase) {
  const ModelPoint pt{0.7, 0.5};
  const Maximum m = max_escape_exponent(pt);
  EXPECT_LT(m.value, 0.0);
  // Sigma + s - 1 peaks where Sigma' = -1 when that point is populated.
  EXPECT_NEAR(m.argmax, tangent_entropy(0.5), 1e-6);
  EXPECT_EQ(walk_length(16, 1.0, 2.0), 256u);
}

}  // namespace
