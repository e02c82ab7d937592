#include <algorithm>
#include <cmath>
#include <map>

#include <gtest/gtest.h>

#include "rsm/errors.hpp"
#include "rsm/instance.hpp"
#include "stats_util.hpp"

namespace {

using namespace rsm;

Subcube cube_from_string(const std::string& s) {
  // '0', '1' frozen; '*' free. Character i is variable i.
  Subcube c = Subcube::whole(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '*') continue;
    c.frozen_mask.set(i, true);
    c.frozen_values.set(i, s[i] == '1');
  }
  return c;
}

Instance small_instance(std::size_t n, std::size_t m, double p, std::uint64_t seed) {
  Instance inst;
  inst.n = n;
  inst.p = p;
  inst.seed = seed;
  Rng rng(seed);
  for (std::size_t k = 0; k < m; ++k) inst.clusters.push_back(random_subcube(n, p, rng));
  return inst;
}

TEST(FloorExp2, SnapsNearIntegers) {
  EXPECT_EQ(floor_exp2((1.0 - 0.8) * 10.0), 4U);
  EXPECT_EQ(floor_exp2(2.5), 5U);
  EXPECT_EQ(floor_exp2(0.0), 1U);
  EXPECT_EQ(floor_exp2(-0.5), 0U);
  EXPECT_EQ(floor_exp2(-1e-12), 1U);
  EXPECT_THROW(floor_exp2(41.0), SizeError);
  EXPECT_EQ(cluster_count(20, 0.3), 16384U);
  EXPECT_EQ(cluster_count(10, 1.2), 0U);
}

TEST(Subcube, ValidateAndMembership) {
  const Subcube c = cube_from_string("1*0*");
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(c.free_count(), 2U);
  EXPECT_TRUE(membership(BitVec::from_u64(4, 0b1001), c));
  EXPECT_TRUE(membership(BitVec::from_u64(4, 0b0011), c));
  EXPECT_FALSE(membership(BitVec::from_u64(4, 0b0111), c));
  Subcube bad = c;
  bad.frozen_values.set(1, true);
  EXPECT_THROW(bad.validate(), DomainError);
}

TEST(Subcube, IntersectionAndDistanceMatchEnumeration) {
  Rng rng(3);
  const std::size_t n = 8;
  for (int rep = 0; rep < 300; ++rep) {
    const Subcube a = random_subcube(n, 0.6, rng);
    const Subcube b = random_subcube(n, 0.6, rng);
    std::size_t common = 0;
    std::size_t best = n + 1;
    std::size_t diam = 0;
    for (std::uint64_t x = 0; x < 256; ++x) {
      const BitVec cx = BitVec::from_u64(n, x);
      if (membership(cx, a) && membership(cx, b)) ++common;
      if (!membership(cx, a)) continue;
      for (std::uint64_t y = 0; y < 256; ++y) {
        const BitVec cy = BitVec::from_u64(n, y);
        if (membership(cy, b)) best = std::min(best, hamming_distance(cx, cy));
        if (membership(cy, a)) diam = std::max(diam, hamming_distance(cx, cy));
      }
    }
    const auto inter = intersect(a, b);
    EXPECT_EQ(inter.has_value(), common > 0);
    if (inter) {
      EXPECT_EQ(std::size_t{1} << inter->free_count(), common);
    }
    EXPECT_EQ(pair_distance(a, b), best);
    EXPECT_EQ(diameter(a), diam);
  }
}

TEST(Instance, GenerateIsDeterministicAndSized) {
  const Instance a = generate(12, 0.5, 0.7, 99);
  const Instance b = generate(12, 0.5, 0.7, 99);
  EXPECT_EQ(a.clusters.size(), 64U);
  EXPECT_EQ(a.clusters, b.clusters);
  EXPECT_EQ(a.rng, "mt19937_64");
  const Instance c = generate(12, 0.5, 0.7, 100);
  EXPECT_NE(a.clusters, c.clusters);
  EXPECT_TRUE(generate(10, 1.2, 0.5, 1).clusters.empty());
}

TEST(Instance, OverlapDefinition) {
  const BitVec a = BitVec::from_u64(8, 0x0f);
  const BitVec b = BitVec::from_u64(8, 0x0e);
  EXPECT_DOUBLE_EQ(overlap(a, a), 1.0);
  EXPECT_DOUBLE_EQ(overlap(a, b), 0.75);
  EXPECT_DOUBLE_EQ(overlap(a, ~a), -1.0);
}

TEST(Counting, InclusionExclusionMatchesBruteForce) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Instance inst = small_instance(4 + seed % 11, 1 + seed % 12, 0.3 + 0.015 * seed, seed);
    EXPECT_EQ(count_solutions_ie(inst), count_solutions_bruteforce(inst)) << "seed " << seed;
  }
}

TEST(Counting, HandBuiltUnion) {
  Instance inst;
  inst.n = 4;
  inst.clusters = {cube_from_string("1***"), cube_from_string("*1**"), cube_from_string("0000")};
  // 8 + 8 - 4 + 1
  EXPECT_EQ(count_solutions_bruteforce(inst), 13U);
  EXPECT_EQ(count_solutions_ie(inst), 13U);
}

TEST(Counting, UnionCountsAgreeWithEnumeration) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = small_instance(10, 3 + seed, 0.5, seed + 100);
    const auto sols = enumerate_solutions(inst);
    EXPECT_TRUE(std::is_sorted(sols.begin(), sols.end()));
    std::vector<std::uint64_t> ones(inst.n, 0);
    for (std::uint64_t s : sols) {
      for (std::size_t i = 0; i < inst.n; ++i) ones[i] += (s >> i) & 1U;
    }
    const UnionCounts ie = union_counts_ie(inst.clusters, inst.n);
    const UnionCounts bm = union_counts_bitmap(inst.clusters, inst.n);
    EXPECT_EQ(ie.total, sols.size());
    EXPECT_EQ(bm.total, sols.size());
    EXPECT_EQ(ie.ones, ones);
    EXPECT_EQ(bm.ones, ones);
  }
}

TEST(Counting, SizeLimits) {
  EXPECT_THROW(count_solutions_bruteforce(small_instance(27, 1, 0.5, 1)), SizeError);
  EXPECT_THROW(count_solutions_ie(small_instance(10, 25, 0.5, 1)), SizeError);
}

TEST(Containing, CountsAndIndices) {
  const Instance inst = small_instance(9, 30, 0.4, 5);
  Rng rng(8);
  for (int rep = 0; rep < 50; ++rep) {
    const Configuration c = random_configuration(9, rng);
    const Containing got = clusters_containing(c, inst);
    std::vector<std::size_t> want;
    for (std::size_t k = 0; k < inst.clusters.size(); ++k) {
      if (membership(c, inst.clusters[k])) want.push_back(k);
    }
    EXPECT_EQ(got.indices, want);
    EXPECT_EQ(got.count, want.size());
    EXPECT_EQ(is_solution(c, inst), !want.empty());
  }
}

TEST(Histogram, SumsToClusterCount) {
  const Instance inst = generate(14, 0.4, 0.5, 4);
  const auto h = cluster_entropy_histogram(inst);
  ASSERT_EQ(h.size(), 15U);
  std::uint64_t total = 0;
  for (auto v : h) total += v;
  EXPECT_EQ(total, inst.clusters.size());
}

TEST(Sampler, UniformOverSolutions) {
  // Overlapping clusters make naive cluster-then-point sampling biased.
  const Instance inst = small_instance(7, 6, 0.45, 21);
  const auto sols = enumerate_solutions(inst);
  ASSERT_GT(sols.size(), 10U);
  std::map<std::uint64_t, std::size_t> index;
  for (std::size_t i = 0; i < sols.size(); ++i) index[sols[i]] = i;
  std::vector<double> observed(sols.size(), 0.0);
  const SolutionSampler sampler(inst);
  Rng rng(77);
  const std::size_t draws = 40 * sols.size();
  for (std::size_t t = 0; t < draws; ++t) {
    const Configuration c = sampler(rng);
    ASSERT_TRUE(is_solution(c, inst));
    observed[index.at(c.to_u64())] += 1.0;
  }
  std::vector<double> expected(sols.size(), static_cast<double>(draws) / sols.size());
  const auto chi = testutil::chi_square(observed, expected, 0.001);
  EXPECT_TRUE(chi.pass) << chi.statistic << " > " << chi.critical;
}

TEST(Sampler, EmptyInstanceThrows) {
  Instance inst;
  inst.n = 5;
  EXPECT_THROW(SolutionSampler{inst}, UnsatError);
}

}  // namespace

namespace {

TEST(StatsUtil, BinomialPmf) {
  const auto pmf = testutil::binomial_pmf(20, 0.3);
  double sum = 0.0;
  double mean = 0.0;
  for (std::size_t k = 0; k < pmf.size(); ++k) {
    sum += pmf[k];
    mean += static_cast<double>(k) * pmf[k];
  }
  EXPECT_NEAR(sum, 1.0, 1e-14);
  EXPECT_NEAR(mean, 6.0, 1e-12);
  EXPECT_NEAR(pmf[0], std::pow(0.7, 20), 1e-18);
}

}  // namespace
