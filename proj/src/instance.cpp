#include "rsm/instance.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "rsm/errors.hpp"

namespace rsm {

namespace {

constexpr std::size_t kMaxBruteforceN = 26;
constexpr std::size_t kMaxEnumerateN = 24;
constexpr std::size_t kMaxIeClusters = 24;
constexpr std::size_t kMaxCountN = 63;

void require_same_n(std::size_t a, std::size_t b) {
  if (a != b) throw DomainError("length mismatch between configuration and subcube");
}

struct PackedCube {
  std::uint64_t mask;
  std::uint64_t values;
};

std::vector<PackedCube> pack(std::span<const Subcube> cubes) {
  std::vector<PackedCube> out;
  out.reserve(cubes.size());
  for (const Subcube& c : cubes) out.push_back({c.frozen_mask.to_u64(), c.frozen_values.to_u64()});
  return out;
}

// Bit pattern of a 64-bit word whose position j has bit i set, i < 6.
constexpr std::uint64_t low_variable_pattern(std::size_t i) {
  constexpr std::uint64_t kPatterns[6] = {0xaaaaaaaaaaaaaaaaULL, 0xccccccccccccccccULL,
                                          0xf0f0f0f0f0f0f0f0ULL, 0xff00ff00ff00ff00ULL,
                                          0xffff0000ffff0000ULL, 0xffffffff00000000ULL};
  return kPatterns[i];
}

std::vector<std::uint64_t> solution_bitmap(std::span<const Subcube> cubes, std::size_t n) {
  if (n > kMaxBruteforceN) throw SizeError("bitmap enumeration requires n <= 26");
  const std::uint64_t space = std::uint64_t{1} << n;
  std::vector<std::uint64_t> bitmap((space + 63) / 64, 0);
  const auto packed = pack(cubes);
  const std::uint64_t full = space - 1;

  // Pick whichever of point-filling and full scanning touches fewer cells.
  double fill_cost = 0.0;
  for (const PackedCube& c : packed) {
    fill_cost += std::ldexp(1.0, static_cast<int>(n) - std::popcount(c.mask));
  }
  const double scan_cost = static_cast<double>(space) * static_cast<double>(packed.size());
  if (fill_cost <= scan_cost) {
    for (const PackedCube& c : packed) {
      const std::uint64_t free = full & ~c.mask;
      std::uint64_t sub = 0;
      do {
        const std::uint64_t x = c.values | sub;
        bitmap[x >> 6] |= std::uint64_t{1} << (x & 63);
        sub = (sub - free) & free;
      } while (sub != 0);
    }
  } else {
    for (std::uint64_t x = 0; x < space; ++x) {
      for (const PackedCube& c : packed) {
        if (((x ^ c.values) & c.mask) == 0) {
          bitmap[x >> 6] |= std::uint64_t{1} << (x & 63);
          break;
        }
      }
    }
  }
  return bitmap;
}

}  // namespace

Subcube Subcube::whole(std::size_t n) { return {BitVec(n), BitVec(n)}; }

Subcube Subcube::point(const Configuration& c) { return {BitVec::ones(c.size()), c}; }

void Subcube::validate() const {
  if (frozen_mask.size() != frozen_values.size()) throw DomainError("Subcube: length mismatch");
  if (frozen_mask.size() == 0) throw DomainError("Subcube: n must be >= 1");
  if (!(frozen_values & ~frozen_mask).none()) {
    throw DomainError("Subcube: values set on free coordinates");
  }
}

std::uint64_t floor_exp2(double exponent) {
  if (std::isnan(exponent)) throw DomainError("floor_exp2: NaN exponent");
  if (exponent < 0.0) {
    const double r = std::round(exponent);
    return (std::abs(exponent - r) <= 1e-9 && r == 0.0) ? 1 : 0;
  }
  const double r = std::round(exponent);
  const double e = std::abs(exponent - r) <= 1e-9 ? r : exponent;
  if (e > 40.0) throw SizeError("floor_exp2: more than 2^40 objects requested");
  return static_cast<std::uint64_t>(std::floor(std::exp2(e)));
}

std::uint64_t cluster_count(std::size_t n, double alpha) {
  if (!(alpha >= 0.0)) throw DomainError("alpha must be >= 0");
  return floor_exp2((1.0 - alpha) * static_cast<double>(n));
}

Subcube random_subcube(std::size_t n, double p, Rng& rng) {
  Subcube c = Subcube::whole(n);
  const double half = 0.5 * p;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rng.uniform();
    if (u < half) {
      c.frozen_mask.set(i, true);
    } else if (u < p) {
      c.frozen_mask.set(i, true);
      c.frozen_values.set(i, true);
    }
  }
  return c;
}

Instance generate(std::size_t n, double alpha, double p, std::uint64_t seed) {
  if (n < 1) throw DomainError("generate: n must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("generate: p outside [0,1]");
  Instance inst;
  inst.n = n;
  inst.alpha = alpha;
  inst.p = p;
  inst.seed = seed;
  const std::uint64_t m = cluster_count(n, alpha);
  Rng rng(seed);
  inst.clusters.reserve(m);
  for (std::uint64_t k = 0; k < m; ++k) inst.clusters.push_back(random_subcube(n, p, rng));
  return inst;
}

bool membership(const Configuration& config, const Subcube& cube) {
  require_same_n(config.size(), cube.n());
  return masked_mismatch(config, cube.frozen_values, cube.frozen_mask) == 0;
}

Containing clusters_containing(const Configuration& config, const Instance& inst) {
  require_same_n(config.size(), inst.n);
  Containing out;
  for (std::size_t k = 0; k < inst.clusters.size(); ++k) {
    if (masked_mismatch(config, inst.clusters[k].frozen_values, inst.clusters[k].frozen_mask) == 0) {
      out.indices.push_back(k);
    }
  }
  out.count = out.indices.size();
  return out;
}

bool is_solution(const Configuration& config, const Instance& inst) {
  require_same_n(config.size(), inst.n);
  return std::any_of(inst.clusters.begin(), inst.clusters.end(), [&](const Subcube& c) {
    return masked_mismatch(config, c.frozen_values, c.frozen_mask) == 0;
  });
}

std::optional<Subcube> intersect(const Subcube& a, const Subcube& b) {
  require_same_n(a.n(), b.n());
  if (pair_distance(a, b) != 0) return std::nullopt;
  return Subcube{a.frozen_mask | b.frozen_mask, a.frozen_values | b.frozen_values};
}

std::size_t pair_distance(const Subcube& a, const Subcube& b) {
  require_same_n(a.n(), b.n());
  return masked_mismatch(a.frozen_values, b.frozen_values, a.frozen_mask, b.frozen_mask);
}

std::size_t diameter(const Subcube& cube) { return cube.free_count(); }

double overlap(const Configuration& a, const Configuration& b) {
  require_same_n(a.size(), b.size());
  const auto n = static_cast<double>(a.size());
  return (n - 2.0 * static_cast<double>(hamming_distance(a, b))) / n;
}

std::uint64_t count_solutions_bruteforce(const Instance& inst) {
  if (inst.n > kMaxBruteforceN) throw SizeError("count_solutions_bruteforce requires n <= 26");
  const auto packed = pack(inst.clusters);
  const std::uint64_t space = std::uint64_t{1} << inst.n;
  std::uint64_t count = 0;
  for (std::uint64_t x = 0; x < space; ++x) {
    for (const PackedCube& c : packed) {
      if (((x ^ c.values) & c.mask) == 0) {
        ++count;
        break;
      }
    }
  }
  return count;
}

UnionCounts union_counts_ie(std::span<const Subcube> cubes, std::size_t n) {
  if (cubes.size() > kMaxIeClusters) throw SizeError("inclusion-exclusion requires M <= 24");
  if (n > kMaxCountN) throw SizeError("exact counting requires n <= 63");
  const auto packed = pack(cubes);
  __int128 total = 0;
  std::vector<__int128> ones(n, 0);

  // Depth-first walk over subsets; a branch dies as soon as its running
  // intersection is empty, since every superset is empty too.
  auto visit = [&](auto&& self, std::size_t start, std::uint64_t mask, std::uint64_t values,
                   int sign) -> void {
    for (std::size_t j = start; j < packed.size(); ++j) {
      const PackedCube& c = packed[j];
      if (((values ^ c.values) & mask & c.mask) != 0) continue;
      const std::uint64_t m = mask | c.mask;
      const std::uint64_t v = values | c.values;
      const int free = static_cast<int>(n) - std::popcount(m);
      const __int128 size = static_cast<__int128>(1) << free;
      total += sign * size;
      for (std::size_t i = 0; i < n; ++i) {
        if ((m >> i) & 1U) {
          if ((v >> i) & 1U) ones[i] += sign * size;
        } else {
          ones[i] += sign * (size >> 1);
        }
      }
      self(self, j + 1, m, v, -sign);
    }
  };
  visit(visit, 0, 0, 0, +1);

  UnionCounts out;
  out.total = static_cast<std::uint64_t>(total);
  out.ones.reserve(n);
  for (const __int128 o : ones) out.ones.push_back(static_cast<std::uint64_t>(o));
  return out;
}

UnionCounts union_counts_bitmap(std::span<const Subcube> cubes, std::size_t n) {
  const auto bitmap = solution_bitmap(cubes, n);
  UnionCounts out;
  out.ones.assign(n, 0);
  for (std::size_t w = 0; w < bitmap.size(); ++w) {
    const std::uint64_t word = bitmap[w];
    if (word == 0) continue;
    out.total += static_cast<std::uint64_t>(std::popcount(word));
    for (std::size_t i = 0; i < n; ++i) {
      if (i < 6) {
        out.ones[i] += static_cast<std::uint64_t>(std::popcount(word & low_variable_pattern(i)));
      } else if ((w >> (i - 6)) & 1U) {
        out.ones[i] += static_cast<std::uint64_t>(std::popcount(word));
      }
    }
  }
  return out;
}

std::uint64_t count_solutions_ie(const Instance& inst) {
  return union_counts_ie(inst.clusters, inst.n).total;
}

std::vector<std::uint64_t> enumerate_solutions(const Instance& inst) {
  if (inst.n > kMaxEnumerateN) throw SizeError("enumerate_solutions requires n <= 24");
  const auto bitmap = solution_bitmap(inst.clusters, inst.n);
  std::vector<std::uint64_t> out;
  for (std::size_t w = 0; w < bitmap.size(); ++w) {
    std::uint64_t word = bitmap[w];
    while (word != 0) {
      const int b = std::countr_zero(word);
      out.push_back(static_cast<std::uint64_t>(w) * 64 + static_cast<std::uint64_t>(b));
      word &= word - 1;
    }
  }
  return out;
}

std::vector<std::uint64_t> cluster_entropy_histogram(const Instance& inst) {
  std::vector<std::uint64_t> hist(inst.n + 1, 0);
  for (const Subcube& c : inst.clusters) ++hist[c.free_count()];
  return hist;
}

SolutionSampler::SolutionSampler(const Instance& inst) : inst_(&inst) {
  if (inst.clusters.empty()) throw UnsatError("sample_solution: instance has no clusters");
  cumulative_.reserve(inst.clusters.size());
  double acc = 0.0;
  for (const Subcube& c : inst.clusters) {
    acc += std::ldexp(1.0, static_cast<int>(c.free_count()));
    cumulative_.push_back(acc);
  }
}

Configuration SolutionSampler::operator()(Rng& rng) const {
  const Instance& inst = *inst_;
  for (;;) {
    const double u = rng.uniform() * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    if (it == cumulative_.end()) --it;
    const Subcube& cube = inst.clusters[static_cast<std::size_t>(it - cumulative_.begin())];
    Configuration x = cube.frozen_values;
    for (std::size_t i = 0; i < inst.n; ++i) {
      if (!cube.frozen_mask.get(i)) x.set(i, (rng() >> 63) != 0);
    }
    std::size_t holders = 0;
    for (const Subcube& c : inst.clusters) {
      if (masked_mismatch(x, c.frozen_values, c.frozen_mask) == 0) ++holders;
    }
    if (holders == 1 || rng.uniform() * static_cast<double>(holders) < 1.0) return x;
  }
}

Configuration sample_solution(const Instance& inst, Rng& rng) {
  return SolutionSampler(inst)(rng);
}

Configuration random_configuration(std::size_t n, Rng& rng) {
  Configuration x(n);
  for (std::size_t i = 0; i < n; ++i) x.set(i, (rng() >> 63) != 0);
  return x;
}

}  // namespace rsm
