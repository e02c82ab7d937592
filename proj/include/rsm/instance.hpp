#pragma once

// Explicit random-subcube instances: a solution set S given as the union of
// M = floor(2^((1-alpha) n)) random subcubes of {0,1}^n.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rsm/bitvec.hpp"
#include "rsm/rng.hpp"

namespace rsm {

/// A point of {0,1}^n.
using Configuration = BitVec;

/// Product set fixing the coordinates in frozen_mask to frozen_values.
struct Subcube {
  BitVec frozen_mask;
  BitVec frozen_values;

  static Subcube whole(std::size_t n);
  static Subcube point(const Configuration& c);

  std::size_t n() const { return frozen_mask.size(); }
  std::size_t frozen_count() const { return frozen_mask.popcount(); }
  std::size_t free_count() const { return n() - frozen_count(); }
  /// Throws DomainError if values are set outside the mask or lengths differ.
  void validate() const;

  friend bool operator==(const Subcube&, const Subcube&) = default;
};

struct Instance {
  std::size_t n = 0;
  double alpha = 0.0;
  double p = 0.0;
  std::uint64_t seed = 0;
  std::string rng = Rng::kName;
  std::vector<Subcube> clusters;

  std::size_t cluster_count() const { return clusters.size(); }
};

/// floor(2^exponent) with exponents within 1e-9 of an integer snapped to it,
/// so that e.g. (1 - 0.8) * 10 gives exactly 4. Throws SizeError above 2^40.
std::uint64_t floor_exp2(double exponent);

/// M = floor(2^((1-alpha) n)).
std::uint64_t cluster_count(std::size_t n, double alpha);

/// Each coordinate frozen to 0 w.p. p/2, to 1 w.p. p/2, free w.p. 1-p.
Subcube random_subcube(std::size_t n, double p, Rng& rng);

Instance generate(std::size_t n, double alpha, double p, std::uint64_t seed);

bool membership(const Configuration& config, const Subcube& cube);

struct Containing {
  std::size_t count = 0;
  std::vector<std::size_t> indices;
};
Containing clusters_containing(const Configuration& config, const Instance& inst);

bool is_solution(const Configuration& config, const Instance& inst);

/// Intersection of two subcubes; empty when they disagree on a coordinate
/// frozen in both.
std::optional<Subcube> intersect(const Subcube& a, const Subcube& b);

/// Minimum Hamming distance between two subcubes.
std::size_t pair_distance(const Subcube& a, const Subcube& b);

/// Largest Hamming distance inside the cube, i.e. its free count.
std::size_t diameter(const Subcube& cube);

/// q = (n - 2 d_H) / n.
double overlap(const Configuration& a, const Configuration& b);

/// Exhaustive scan of all 2^n configurations. Requires n <= 26.
std::uint64_t count_solutions_bruteforce(const Instance& inst);

/// Inclusion-exclusion over cluster subsets with empty-intersection pruning.
/// Requires M <= 24 and n <= 63.
std::uint64_t count_solutions_ie(const Instance& inst);

/// |union of cubes| and, per variable, how many members of the union have
/// that variable set to 1. Computed by pruned inclusion-exclusion.
struct UnionCounts {
  std::uint64_t total = 0;
  std::vector<std::uint64_t> ones;
};
UnionCounts union_counts_ie(std::span<const Subcube> cubes, std::size_t n);

/// Same quantities from a 2^n membership bitmap. Requires n <= 26.
UnionCounts union_counts_bitmap(std::span<const Subcube> cubes, std::size_t n);

/// Sorted list of solutions encoded as integers (bit i = variable i).
/// Requires n <= 24.
std::vector<std::uint64_t> enumerate_solutions(const Instance& inst);

/// Number of clusters per free-variable count, indexed 0..n.
std::vector<std::uint64_t> cluster_entropy_histogram(const Instance& inst);

/// Exactly uniform sampler over S: cluster chosen proportional to its size,
/// uniform point inside it, accepted with probability 1/(number of clusters
/// containing the point).
class SolutionSampler {
 public:
  explicit SolutionSampler(const Instance& inst);
  Configuration operator()(Rng& rng) const;

 private:
  const Instance* inst_;
  std::vector<double> cumulative_;
};

Configuration sample_solution(const Instance& inst, Rng& rng);

Configuration random_configuration(std::size_t n, Rng& rng);

}  // namespace rsm
