#pragma once

// Energetic random-subcube landscape: valleys are subcubes carrying a bottom
// energy, and a configuration's energy is the cheapest (bottom + distance)
// over all valleys. Entropies and complexities are in bits; temperatures
// are in the matching units, so the Boltzmann factor is 2^(-dE/T).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rsm/instance.hpp"
#include "rsm/numerics.hpp"
#include "rsm/rng.hpp"

namespace rsm {

/// Sigma(e0) = a + b e0 - c e0 ln(e0), with the e0 ln e0 -> 0 limit at 0.
struct LandscapeParams {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double p = 0.5;
  std::size_t n = 0;

  /// Throws DomainError on non-finite coefficients, c < 0 or p outside (0,1).
  void validate() const;
};

double sigma(const LandscapeParams& params, double e0);
double sigma_slope(const LandscapeParams& params, double e0);

/// Sigma(e0) - D(s0 || 1-p), without truncation at zero.
double valley_complexity(const LandscapeParams& params, double e0, double s0);

/// s0 + (1-s0) H((e-e0)/(1-s0)): entropy at energy e inside one valley.
double valley_entropy(double e, double e0, double s0);

/// e0 - T [s0 + (1-s0) log2(1 + 2^(-1/T))], the single-valley free energy.
double valley_free_energy(double T, double e0, double s0);

/// Interval of bottom energies with Sigma(e0) >= 0. e_max is capped at 1.
struct EnergyDomain {
  double e_gs;
  double e_max;
  bool capped;
};

struct TypicalEnergy {
  double e_star;
  double e0_star;
  double s0_star;
};

enum class Branch { NonCondensed, Condensed };
const char* to_string(Branch b);

/// s(e) together with the dominating valley parameters and ds/de.
struct EntropyPoint {
  double s;
  double e0;
  double s0;
  double slope;
  Branch branch;
};

struct Temperatures {
  double T_d;
  double e_gs;
  double e_star;
  /// Absent when no condensation happens above e_gs.
  std::optional<double> T_c;
  std::optional<double> e_c;
  bool degenerate() const { return !T_c.has_value(); }
};

/// Lowest single-valley free energy at temperature T, reached on the
/// boundary s0 = s_M(e0).
struct CanonicalState {
  double f;
  double e0;
  double s0;
  double e;
  /// Poisson-Dirichlet parameter before clamping to [0,1].
  double m_raw;
};

struct DiagramRow {
  double T;
  double e_eq;
  double e_dyn;
  double m;
};

struct ThermoReport {
  TypicalEnergy typical;
  Temperatures temps;
  std::vector<std::pair<double, double>> s_curve;      // (e, s(e))
  std::vector<std::pair<double, double>> s_dyn_curve;  // (e, s_dyn(e))
  std::vector<DiagramRow> rows;
};

/// Analytic thermodynamics of a landscape family. Construction computes the
/// bottom-energy domain, the typical energy and the transition temperatures.
class Thermodynamics {
 public:
  explicit Thermodynamics(const LandscapeParams& params, const Tolerances& tol = {});

  const LandscapeParams& params() const { return params_; }
  const EnergyDomain& domain() const { return domain_; }
  const TypicalEnergy& typical() const { return typical_; }
  const Temperatures& temperatures() const { return temps_; }

  /// Largest / smallest root in s0 of valley_complexity(e0, s0) = 0.
  double biggest_valley(double e0) const;
  double smallest_valley(double e0) const;

  /// Maximizing bottom energy of 1 - D(e - e0 || p/2) + Sigma(e0).
  double saddle_bottom(double e) const;
  /// (1-p)(1 - e + e0)/(1 - p/2).
  double saddle_entropy(double e, double e0) const;

  /// s(e) for e in [e_gs, e_star].
  EntropyPoint entropy(double e) const;

  /// Single typical valley: s0* + (1-s0*) H((e-e0*)/(1-s0*)) on [e0*, e*].
  double dynamical_entropy(double e) const;
  double dynamical_slope(double e) const;

  double equilibrium_energy(double T) const;
  double dynamical_energy(double T) const;
  CanonicalState canonical_state(double T) const;
  /// m(T) clamped to [0,1].
  double pd_parameter(double T) const;
  /// max over e0 of valley_complexity(e0, s0) subject to f_V(T|e0,s0) = f;
  /// -inf when no admissible s0 exists.
  double canonical_complexity(double T, double f) const;

  std::vector<DiagramRow> diagram(std::span<const double> T_grid) const;
  ThermoReport report(std::span<const double> T_grid, std::size_t e_points = 200) const;

 private:
  double non_condensed_slack(double e) const;

  LandscapeParams params_;
  Tolerances tol_;
  EnergyDomain domain_{};
  TypicalEnergy typical_{};
  Temperatures temps_{};
};

EnergyDomain energy_domain(const LandscapeParams& params, const Tolerances& tol = {});
TypicalEnergy typical_energy(const LandscapeParams& params, const Tolerances& tol = {});
EntropyPoint microcanonical_entropy(const LandscapeParams& params, double e,
                                    const Tolerances& tol = {});
Temperatures temperatures(const LandscapeParams& params, const Tolerances& tol = {});
double dynamical_entropy(const LandscapeParams& params, double e, const Tolerances& tol = {});
std::vector<DiagramRow> et_diagram(const LandscapeParams& params, std::span<const double> T_grid,
                                   const Tolerances& tol = {});

/// Evenly spaced grid of `count` temperatures on [t_min, t_max].
std::vector<double> temperature_grid(double t_min, double t_max, std::size_t count);

// ---------------------------------------------------------------------------
// Explicit landscapes

struct Valley {
  Subcube cube;
  /// Integer bottom energy E0; the per-variable value is E0 / n.
  std::size_t e0 = 0;
};

struct Landscape {
  LandscapeParams params;
  std::uint64_t seed = 0;
  std::string rng = Rng::kName;
  /// Sorted by bottom energy; index order breaks ties in config_energy.
  std::vector<Valley> valleys;

  std::size_t n() const { return params.n; }
};

struct LandscapeOptions {
  std::size_t max_valleys = std::size_t{1} << 20;
  /// Optional p(e0); the constant params.p is used when empty.
  std::function<double(double)> freezing;
};

/// floor(2^(n Sigma(E0/n))) valleys at each level E0 = 0..n with Sigma >= 0.
/// Level E0 draws from stream E0 of `seed`. Throws SizeError over budget.
Landscape generate_landscape(const LandscapeParams& params, std::uint64_t seed,
                             const LandscapeOptions& options = {});

struct EnergyEval {
  std::size_t energy;
  std::size_t valley;
};

/// min over valleys of E0 + distance, lowest index on ties. Throws
/// DomainError on an empty landscape.
EnergyEval config_energy(const Configuration& config, const Landscape& landscape);

struct ScheduleStep {
  double T;
  std::size_t sweeps;
};

struct SweepRecord {
  std::size_t sweep;
  double T;
  /// Mean of E / n over the n proposals of the sweep.
  double energy;
};

struct EnergyTrace {
  std::vector<SweepRecord> sweeps;
  Configuration final_config;
  std::size_t final_energy = 0;
  std::size_t accepted = 0;
  std::size_t proposed = 0;
};

/// Single-flip Metropolis chain on E(sigma). Distances to every valley are
/// kept up to date so a proposal costs one pass over the valleys.
class MetropolisChain {
 public:
  MetropolisChain(const Landscape& landscape, Configuration start);

  const Configuration& state() const { return config_; }
  std::size_t energy() const { return energy_; }

  /// One proposal at temperature T (T = 0 accepts only dE <= 0, T = inf
  /// accepts everything). Returns whether the flip was kept.
  bool step(double T, Rng& rng);

 private:
  std::size_t min_energy() const;
  void apply_flip(std::size_t var);

  const Landscape* landscape_;
  Configuration config_;
  std::vector<std::uint32_t> dist_;
  std::vector<std::vector<std::uint32_t>> frozen_at_;
  std::size_t energy_ = 0;
};

/// Runs the schedule, one record per sweep of n proposals. Throws SizeError
/// when n * sweeps * valleys exceeds `budget`.
EnergyTrace metropolis(const Landscape& landscape, std::span<const ScheduleStep> schedule,
                       const Configuration& start, Rng& rng, double budget = 1e13);

// ---------------------------------------------------------------------------
// Poisson-Dirichlet weights

struct PdSample {
  /// Largest weights, decreasing.
  std::vector<double> weights;
  /// Mass of everything beyond the cutoff; weights + residual sum to 1.
  double residual;
};

/// Normalized points Gamma_i^(-1/m) of a Poisson process, Gamma_i the arrival
/// times of a unit-rate process; the tail past the cutoff is integrated.
PdSample pd_sample_point_process(double m, std::size_t cutoff, Rng& rng);

/// GEM stick-breaking with V_k ~ Beta(1-m, k m), sorted.
PdSample pd_sample_stick_breaking(double m, std::size_t cutoff, Rng& rng);

}  // namespace rsm
