#include "rsm/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/random/beta_distribution.hpp>

#include "rsm/errors.hpp"

namespace rsm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Energies this close outside a documented range are clamped onto it.
constexpr double kEdgeSlack = 1e-12;

/// Argmax on [lo, hi] of a concave function given its (non-increasing)
/// derivative.
template <class D>
double concave_argmax(D&& deriv, double lo, double hi, const Tolerances& tol) {
  if (!(lo < hi)) return lo;
  if (!(deriv(lo) > 0.0)) return lo;
  if (!(deriv(hi) < 0.0)) return hi;
  return find_root(deriv, lo, hi, tol);
}

/// log2(1 + 2^(-1/T)): minus the free energy per unit of T of one free
/// coordinate, minimized over its distance from the valley.
double free_site_gain(double T) {
  if (T == 0.0) return 0.0;
  if (std::isinf(T)) return 1.0;
  return std::log1p(std::exp2(-1.0 / T)) / kLn2;
}

/// Distance fraction w minimizing w - T H(w).
double thermal_fraction(double T) {
  if (T == 0.0) return 0.0;
  if (std::isinf(T)) return 0.5;
  return 1.0 / (1.0 + std::exp2(1.0 / T));
}

void require_temperature(double T) {
  if (!(T >= 0.0)) throw DomainError("temperature must be >= 0");
}

}  // namespace

void LandscapeParams::validate() const {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c)) {
    throw DomainError("landscape coefficients must be finite");
  }
  if (c < 0.0) throw DomainError("landscape coefficient c must be >= 0");
  if (!(p > 0.0 && p < 1.0)) throw DomainError("landscape p must lie in (0,1)");
}

double sigma(const LandscapeParams& params, double e0) {
  if (!(e0 >= 0.0)) throw DomainError("sigma: e0 must be >= 0");
  const double xlnx = e0 > 0.0 ? e0 * std::log(e0) : 0.0;
  return params.a + params.b * e0 - params.c * xlnx;
}

double sigma_slope(const LandscapeParams& params, double e0) {
  if (!(e0 >= 0.0)) throw DomainError("sigma_slope: e0 must be >= 0");
  if (e0 == 0.0) return params.c > 0.0 ? kInf : params.b;
  return params.b - params.c * (std::log(e0) + 1.0);
}

double valley_complexity(const LandscapeParams& params, double e0, double s0) {
  if (!(s0 >= 0.0 && s0 <= 1.0)) throw DomainError("valley_complexity: s0 outside [0,1]");
  return sigma(params, e0) - binary_kl(s0, 1.0 - params.p);
}

double valley_entropy(double e, double e0, double s0) {
  if (!(s0 >= 0.0 && s0 <= 1.0)) throw DomainError("valley_entropy: s0 outside [0,1]");
  const double u = e - e0;
  if (u < -kEdgeSlack) throw DomainError("valley_entropy: e below the valley bottom");
  if (u <= 0.0) return s0;
  if (s0 == 1.0) throw DomainError("valley_entropy: e above a valley with no frozen variable");
  const double w = u / (1.0 - s0);
  if (w > 1.0 + kEdgeSlack) throw DomainError("valley_entropy: e beyond the valley's reach");
  return s0 + (1.0 - s0) * binary_entropy(std::min(w, 1.0));
}

double valley_free_energy(double T, double e0, double s0) {
  require_temperature(T);
  if (std::isinf(T)) throw DomainError("valley_free_energy: T must be finite");
  const double g = free_site_gain(T);
  return e0 - T * (s0 + (1.0 - s0) * g);
}

EnergyDomain energy_domain(const LandscapeParams& params, const Tolerances& tol) {
  params.validate();
  auto sig = [&](double e) { return sigma(params, e); };
  double peak = 0.0;
  if (params.c > 0.0) {
    peak = std::min(1.0, std::exp(params.b / params.c - 1.0));
  } else if (params.b > 0.0) {
    peak = 1.0;
  }
  if (sig(peak) < 0.0) throw DomainError("Sigma(e0) < 0 everywhere: the landscape is empty");
  EnergyDomain d{};
  d.e_gs = sig(0.0) >= 0.0 ? 0.0 : find_root(sig, 0.0, peak, tol);
  if (sig(1.0) >= 0.0) {
    d.e_max = 1.0;
    d.capped = true;
  } else {
    d.e_max = find_root(sig, peak, 1.0, tol);
    d.capped = false;
  }
  return d;
}

const char* to_string(Branch b) {
  return b == Branch::Condensed ? "condensed" : "non-condensed";
}

Thermodynamics::Thermodynamics(const LandscapeParams& params, const Tolerances& tol)
    : params_(params), tol_(tol) {
  tol_.validate();
  domain_ = energy_domain(params_, tol_);
  const double y = 0.5 * params_.p;

  // e* = min over e0 of e0 + delta(Sigma(e0), p/2); the objective is convex.
  auto deriv = [&](double e0) {
    const double x = sigma(params_, e0);
    const double sl = sigma_slope(params_, e0);
    const double edge = sl > 0.0 ? -kInf : kInf;
    if (x <= 0.0) return edge;
    const double d = delta_inverse(x, y, tol_);
    if (d == 0.0) return 1.0;
    const double dd = binary_kl_derivative(d, y);
    // Sigma within rounding of 0 gives d = y and a zero slope of D.
    if (!(dd < 0.0)) return edge;
    return 1.0 + sl / dd;
  };
  const double e0 =
      concave_argmax([&](double e) { return -deriv(e); }, domain_.e_gs, domain_.e_max, tol_);
  typical_.e0_star = e0;
  typical_.e_star = e0 + delta_inverse(std::max(0.0, sigma(params_, e0)), y, tol_);
  typical_.s0_star = saddle_entropy(typical_.e_star, e0);

  temps_.e_gs = domain_.e_gs;
  temps_.e_star = typical_.e_star;
  const double slope_star = entropy(typical_.e_star).slope;
  temps_.T_d = 1.0 / slope_star;

  const double lo = domain_.e_gs;
  const double hi = typical_.e_star;
  if (non_condensed_slack(hi) < 0.0) {
    temps_.e_c = hi;
    temps_.T_c = temps_.T_d;
  } else if (lo < hi && non_condensed_slack(lo) < 0.0) {
    const double e_c = find_root([&](double e) { return non_condensed_slack(e); }, lo, hi, tol_);
    const double b = saddle_bottom(e_c);
    const double w = (e_c - b) / (1.0 - saddle_entropy(e_c, b));
    temps_.e_c = e_c;
    temps_.T_c = 1.0 / binary_entropy_derivative(w);
  }
}

double Thermodynamics::biggest_valley(double e0) const {
  const double x = sigma(params_, e0);
  if (x < -kEdgeSlack) throw DomainError("biggest_valley: Sigma(e0) < 0");
  return 1.0 - delta_inverse(std::max(0.0, x), params_.p, tol_);
}

double Thermodynamics::smallest_valley(double e0) const {
  const double x = sigma(params_, e0);
  if (x < -kEdgeSlack) throw DomainError("smallest_valley: Sigma(e0) < 0");
  return delta_inverse(std::max(0.0, x), 1.0 - params_.p, tol_);
}

double Thermodynamics::saddle_entropy(double e, double e0) const {
  const double p = params_.p;
  return (1.0 - p) * (1.0 - e + e0) / (1.0 - 0.5 * p);
}

double Thermodynamics::saddle_bottom(double e) const {
  const double y = 0.5 * params_.p;
  const double hi = std::min(e, domain_.e_max);
  return concave_argmax(
      [&](double e0) { return binary_kl_derivative(e - e0, y) + sigma_slope(params_, e0); },
      domain_.e_gs, hi, tol_);
}

double Thermodynamics::non_condensed_slack(double e) const {
  const double e0 = saddle_bottom(e);
  return valley_complexity(params_, e0, saddle_entropy(e, e0));
}

EntropyPoint Thermodynamics::entropy(double e) const {
  if (e < domain_.e_gs - kEdgeSlack || e > typical_.e_star + kEdgeSlack) {
    throw DomainError("entropy: e outside [e_gs, e_star]");
  }
  e = std::clamp(e, domain_.e_gs, std::max(domain_.e_gs, typical_.e_star));
  const double y = 0.5 * params_.p;

  const double e0 = saddle_bottom(e);
  const double s0 = saddle_entropy(e, e0);
  if (valley_complexity(params_, e0, s0) >= 0.0) {
    const double u = e - e0;
    const double s = 1.0 - binary_kl(u, y) + sigma(params_, e0);
    return {s, e0, s0, binary_entropy_derivative(u / (1.0 - s0)), Branch::NonCondensed};
  }

  // Saddle outside the populated region: optimum on its border. For each e0
  // the objective is concave in s0, so clamping the saddle is exact.
  auto best_s0 = [&](double b) {
    const double u = e - b;
    const double s_hi = std::min(biggest_valley(b), 1.0 - u);
    const double s_lo = smallest_valley(b);
    if (s_lo > s_hi) return -1.0;
    return std::clamp(saddle_entropy(e, b), s_lo, s_hi);
  };
  auto objective = [&](double b) {
    const double s = best_s0(b);
    if (s < 0.0) return -kInf;
    return valley_entropy(e, b, s) + valley_complexity(params_, b, s);
  };
  Tolerances coarse = tol_;
  coarse.grid_points = 128;
  const double hi = std::min(e, domain_.e_max);
  const Maximum best = maximize_1d(objective, domain_.e_gs, hi, coarse);
  const double b = best.argmax;
  const double s = best_s0(b);
  const double w = s < 1.0 ? (e - b) / (1.0 - s) : 0.0;
  return {best.value, b, s, binary_entropy_derivative(std::min(w, 1.0)), Branch::Condensed};
}

double Thermodynamics::dynamical_entropy(double e) const {
  const auto& t = typical_;
  if (e < t.e0_star - kEdgeSlack || e > t.e_star + kEdgeSlack) {
    throw DomainError("dynamical_entropy: e outside [e0*, e*]");
  }
  return valley_entropy(std::clamp(e, t.e0_star, t.e_star), t.e0_star, t.s0_star);
}

double Thermodynamics::dynamical_slope(double e) const {
  const auto& t = typical_;
  if (e < t.e0_star - kEdgeSlack || e > t.e_star + kEdgeSlack) {
    throw DomainError("dynamical_slope: e outside [e0*, e*]");
  }
  const double w = std::max(0.0, e - t.e0_star) / (1.0 - t.s0_star);
  return binary_entropy_derivative(std::min(w, 1.0));
}

double Thermodynamics::dynamical_energy(double T) const {
  require_temperature(T);
  if (T >= temps_.T_d) return typical_.e_star;
  return typical_.e0_star + (1.0 - typical_.s0_star) * thermal_fraction(T);
}

CanonicalState Thermodynamics::canonical_state(double T) const {
  require_temperature(T);
  if (std::isinf(T)) throw DomainError("canonical_state: T must be finite");
  const double q = 1.0 - params_.p;
  const double g = free_site_gain(T);
  // f_V(e0, s_M(e0)) is convex in e0: s_M is the upper edge of a convex set.
  auto deriv = [&](double e0) {
    const double sm = biggest_valley(e0);
    if (sm >= 1.0) return 1.0;
    const double dd = binary_kl_derivative(sm, q);
    const double sl = sigma_slope(params_, e0);
    if (dd <= 0.0) return sl > 0.0 ? -kInf : kInf;
    return 1.0 - T * (1.0 - g) * sl / dd;
  };
  const double e0 =
      concave_argmax([&](double e) { return -deriv(e); }, domain_.e_gs, domain_.e_max, tol_);
  const double s0 = biggest_valley(e0);
  CanonicalState st{};
  st.e0 = e0;
  st.s0 = s0;
  st.f = valley_free_energy(T, e0, s0);
  st.e = e0 + (1.0 - s0) * thermal_fraction(T);
  st.m_raw = s0 >= 1.0 ? kInf : binary_kl_derivative(s0, q) / (1.0 - g);
  return st;
}

double Thermodynamics::pd_parameter(double T) const {
  require_temperature(T);
  if (!temps_.T_c || T >= *temps_.T_c) return 1.0;
  return std::clamp(canonical_state(T).m_raw, 0.0, 1.0);
}

double Thermodynamics::canonical_complexity(double T, double f) const {
  if (!(T > 0.0) || std::isinf(T)) throw DomainError("canonical_complexity: T must be finite and > 0");
  const double g = free_site_gain(T);
  const double scale = T * (1.0 - g);
  const double q = 1.0 - params_.p;
  // s0 = (e0 - f - T g) / scale must lie in [0,1].
  const double lo = std::max(domain_.e_gs, f + T * g);
  const double hi = std::min(domain_.e_max, f + T * g + scale);
  if (lo > hi) return -kInf;
  auto objective = [&](double e0) {
    const double s0 = std::clamp((e0 - f - T * g) / scale, 0.0, 1.0);
    return sigma(params_, e0) - binary_kl(s0, q);
  };
  Tolerances coarse = tol_;
  coarse.grid_points = 256;
  return maximize_1d(objective, lo, hi, coarse).value;
}

double Thermodynamics::equilibrium_energy(double T) const {
  require_temperature(T);
  if (T >= temps_.T_d) return typical_.e_star;
  if (T == 0.0) return domain_.e_gs;
  if (temps_.T_c && T < *temps_.T_c) return canonical_state(T).e;

  auto slope = [&](double e) {
    const double e0 = saddle_bottom(e);
    const double w = (e - e0) / (1.0 - saddle_entropy(e, e0));
    return binary_entropy_derivative(std::clamp(w, 0.0, 1.0)) - 1.0 / T;
  };
  const double lo = temps_.e_c.value_or(domain_.e_gs);
  const double hi = typical_.e_star;
  if (!(slope(lo) > 0.0)) return lo;
  if (!(slope(hi) < 0.0)) return hi;
  return find_root(slope, lo, hi, tol_);
}

std::vector<DiagramRow> Thermodynamics::diagram(std::span<const double> T_grid) const {
  std::vector<DiagramRow> rows;
  rows.reserve(T_grid.size());
  for (double T : T_grid) {
    if (!(T > 0.0)) throw DomainError("diagram: temperatures must be > 0");
    rows.push_back({T, equilibrium_energy(T), dynamical_energy(T), pd_parameter(T)});
  }
  return rows;
}

ThermoReport Thermodynamics::report(std::span<const double> T_grid, std::size_t e_points) const {
  if (e_points < 2) throw DomainError("report: need at least two energy points");
  ThermoReport r;
  r.typical = typical_;
  r.temps = temps_;
  const double span_s = typical_.e_star - domain_.e_gs;
  const double span_d = typical_.e_star - typical_.e0_star;
  for (std::size_t i = 0; i < e_points; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(e_points - 1);
    const double e = domain_.e_gs + f * span_s;
    r.s_curve.emplace_back(e, entropy(e).s);
    const double ed = typical_.e0_star + f * span_d;
    r.s_dyn_curve.emplace_back(ed, dynamical_entropy(ed));
  }
  r.rows = diagram(T_grid);
  return r;
}

TypicalEnergy typical_energy(const LandscapeParams& params, const Tolerances& tol) {
  return Thermodynamics(params, tol).typical();
}

EntropyPoint microcanonical_entropy(const LandscapeParams& params, double e,
                                    const Tolerances& tol) {
  return Thermodynamics(params, tol).entropy(e);
}

Temperatures temperatures(const LandscapeParams& params, const Tolerances& tol) {
  return Thermodynamics(params, tol).temperatures();
}

double dynamical_entropy(const LandscapeParams& params, double e, const Tolerances& tol) {
  return Thermodynamics(params, tol).dynamical_entropy(e);
}

std::vector<DiagramRow> et_diagram(const LandscapeParams& params, std::span<const double> T_grid,
                                   const Tolerances& tol) {
  return Thermodynamics(params, tol).diagram(T_grid);
}

std::vector<double> temperature_grid(double t_min, double t_max, std::size_t count) {
  if (!(t_min > 0.0) || !(t_max >= t_min) || !std::isfinite(t_max)) {
    throw DomainError("temperature_grid: need 0 < tmin <= tmax < inf");
  }
  if (count == 0) throw DomainError("temperature_grid: count must be >= 1");
  if (count == 1) return {t_min};
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) {
    grid[i] = t_min + (t_max - t_min) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  grid.back() = t_max;
  return grid;
}

// ---------------------------------------------------------------------------

Landscape generate_landscape(const LandscapeParams& params, std::uint64_t seed,
                             const LandscapeOptions& options) {
  params.validate();
  if (params.n == 0) throw DomainError("generate_landscape: n must be >= 1");
  const std::size_t n = params.n;
  const auto nd = static_cast<double>(n);

  std::vector<std::uint64_t> counts(n + 1, 0);
  std::uint64_t total = 0;
  for (std::size_t level = 0; level <= n; ++level) {
    const double x = sigma(params, static_cast<double>(level) / nd);
    if (x < 0.0) continue;
    counts[level] = floor_exp2(nd * x);
    total += counts[level];
    if (total > options.max_valleys) {
      throw SizeError("generate_landscape: valley budget exceeded");
    }
  }

  Landscape land;
  land.params = params;
  land.seed = seed;
  land.valleys.reserve(total);
  for (std::size_t level = 0; level <= n; ++level) {
    if (counts[level] == 0) continue;
    double p = params.p;
    if (options.freezing) {
      p = options.freezing(static_cast<double>(level) / nd);
      if (!(p >= 0.0 && p <= 1.0)) throw DomainError("generate_landscape: p(e0) outside [0,1]");
    }
    Rng rng = Rng::stream(seed, level);
    for (std::uint64_t k = 0; k < counts[level]; ++k) {
      land.valleys.push_back({random_subcube(n, p, rng), level});
    }
  }
  return land;
}

EnergyEval config_energy(const Configuration& config, const Landscape& landscape) {
  if (landscape.valleys.empty()) throw DomainError("config_energy: empty landscape");
  if (config.size() != landscape.n()) throw DomainError("config_energy: wrong configuration length");
  EnergyEval best{std::numeric_limits<std::size_t>::max(), 0};
  for (std::size_t v = 0; v < landscape.valleys.size(); ++v) {
    const Valley& val = landscape.valleys[v];
    if (val.e0 >= best.energy) continue;
    const std::size_t e =
        val.e0 + masked_mismatch(config, val.cube.frozen_values, val.cube.frozen_mask);
    if (e < best.energy) best = {e, v};
  }
  return best;
}

MetropolisChain::MetropolisChain(const Landscape& landscape, Configuration start)
    : landscape_(&landscape), config_(std::move(start)), frozen_at_(landscape.n()) {
  if (landscape.valleys.empty()) throw DomainError("metropolis: empty landscape");
  if (config_.size() != landscape.n()) throw DomainError("metropolis: wrong start length");
  dist_.resize(landscape.valleys.size());
  for (std::size_t v = 0; v < landscape.valleys.size(); ++v) {
    const Subcube& c = landscape.valleys[v].cube;
    dist_[v] = static_cast<std::uint32_t>(masked_mismatch(config_, c.frozen_values, c.frozen_mask));
    for (std::size_t i = 0; i < landscape.n(); ++i) {
      if (c.frozen_mask.get(i)) frozen_at_[i].push_back(static_cast<std::uint32_t>(v));
    }
  }
  energy_ = min_energy();
}

std::size_t MetropolisChain::min_energy() const {
  std::size_t best = std::numeric_limits<std::size_t>::max();
  const auto& valleys = landscape_->valleys;
  for (std::size_t v = 0; v < valleys.size(); ++v) {
    best = std::min(best, valleys[v].e0 + dist_[v]);
  }
  return best;
}

void MetropolisChain::apply_flip(std::size_t var) {
  const bool old_value = config_.get(var);
  for (std::uint32_t v : frozen_at_[var]) {
    if (landscape_->valleys[v].cube.frozen_values.get(var) == old_value) {
      ++dist_[v];
    } else {
      --dist_[v];
    }
  }
  config_.flip(var);
}

bool MetropolisChain::step(double T, Rng& rng) {
  require_temperature(T);
  const auto var = static_cast<std::size_t>(rng.below(landscape_->n()));
  apply_flip(var);
  const std::size_t proposed = min_energy();
  const double dE = static_cast<double>(proposed) - static_cast<double>(energy_);
  bool accept = dE <= 0.0;
  if (!accept && T > 0.0) accept = std::isinf(T) || rng.uniform() < std::exp2(-dE / T);
  if (accept) {
    energy_ = proposed;
  } else {
    apply_flip(var);
  }
  return accept;
}

EnergyTrace metropolis(const Landscape& landscape, std::span<const ScheduleStep> schedule,
                       const Configuration& start, Rng& rng, double budget) {
  double work = 0.0;
  for (const ScheduleStep& s : schedule) {
    require_temperature(s.T);
    work += static_cast<double>(s.sweeps);
  }
  work *= static_cast<double>(landscape.n()) * static_cast<double>(landscape.valleys.size());
  if (work > budget) throw SizeError("metropolis: n * sweeps * valleys exceeds the budget");

  MetropolisChain chain(landscape, start);
  EnergyTrace trace;
  const std::size_t n = landscape.n();
  const auto nd = static_cast<double>(n);
  std::size_t sweep = 0;
  for (const ScheduleStep& s : schedule) {
    for (std::size_t k = 0; k < s.sweeps; ++k) {
      double sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (chain.step(s.T, rng)) ++trace.accepted;
        sum += static_cast<double>(chain.energy());
      }
      trace.proposed += n;
      trace.sweeps.push_back({sweep++, s.T, sum / (nd * nd)});
    }
  }
  trace.final_config = chain.state();
  trace.final_energy = chain.energy();
  return trace;
}

// ---------------------------------------------------------------------------

namespace {

void require_pd_args(double m, std::size_t cutoff) {
  if (!(m > 0.0 && m < 1.0)) throw DomainError("pd_sample: m must lie in (0,1)");
  if (cutoff < 10) throw DomainError("pd_sample: cutoff must be >= 10");
}

}  // namespace

PdSample pd_sample_point_process(double m, std::size_t cutoff, Rng& rng) {
  require_pd_args(m, cutoff);
  std::vector<double> gamma(cutoff);
  double t = 0.0;
  for (double& g : gamma) {
    t += rng.exponential();
    g = t;
  }
  // Work relative to the largest point to stay finite for small m.
  const double inv_m = 1.0 / m;
  PdSample out;
  out.weights.resize(cutoff);
  double total = 0.0;
  for (std::size_t i = 0; i < cutoff; ++i) {
    out.weights[i] = std::pow(gamma[i] / gamma[0], -inv_m);
    total += out.weights[i];
  }
  // Sum over points beyond gamma_K of x^(-1/m) ~ integral of the intensity.
  const double tail = m / (1.0 - m) * gamma.back() * std::pow(gamma.back() / gamma[0], -inv_m);
  total += tail;
  for (double& w : out.weights) w /= total;
  out.residual = tail / total;
  return out;
}

PdSample pd_sample_stick_breaking(double m, std::size_t cutoff, Rng& rng) {
  require_pd_args(m, cutoff);
  PdSample out;
  out.weights.reserve(cutoff);
  double rest = 1.0;
  for (std::size_t k = 1; k <= cutoff; ++k) {
    boost::random::beta_distribution<double> beta(1.0 - m, static_cast<double>(k) * m);
    const double v = beta(rng);
    out.weights.push_back(rest * v);
    rest *= 1.0 - v;
  }
  std::sort(out.weights.begin(), out.weights.end(), std::greater<>());
  out.residual = rest;
  return out;
}

}  // namespace rsm
