// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "rsm/analytic.hpp"
#include "rsm/decimation.hpp"
#include "rsm/energy.hpp"
#include "rsm/instance.hpp"
#include "rsm/walkdyn.hpp"
#include "rsm/xsat.hpp"
#include "stats_util.hpp"

namespace {

using namespace rsm;

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  fmt::print("{} {:2d} {}: {} ({:.1f}s)\n", o.pass ? "PASS" : "FAIL", id, name, o.detail, secs);
  std::fflush(stdout);
}

Outcome threshold_value() {
  const double ad = thresholds(0.95).alpha_d;
  const bool ok = std::abs(ad - 0.0704) <= 5e-4 && std::abs(ad - std::log2(1.05)) < 1e-15;
  return {ok, fmt::format("alpha_d(0.95) = {:.6f}", ad)};
}

Outcome kauzmann_structure() {
  Rng rng(2024);
  double worst_jump = 0.0;
  double worst_flat = 0.0;
  double weakest_curv = kInf;
  const double eps = 1e-11;
  const double h = 1e-4;
  for (int k = 0; k < 100; ++k) {
    const double p = 0.05 + 0.94 * rng.uniform();
    const Thresholds t = thresholds(p);
    auto s = [&](double a) { return total_entropy({a, p}); };
    for (double a : {t.alpha_d, t.alpha_c}) worst_jump = std::max(worst_jump, std::abs(s(a + eps) - s(a - eps)));
    const double a = t.alpha_c;
    const double left = (s(a - 2 * h) - 2 * s(a - 3 * h) + s(a - 4 * h)) / (h * h);
    const double right = (s(a + 4 * h) - 2 * s(a + 3 * h) + s(a + 2 * h)) / (h * h);
    worst_flat = std::max(worst_flat, std::abs(left));
    weakest_curv = std::min(weakest_curv, -right);
  }
  const bool ok = worst_jump < 1e-9 && worst_flat < 1e-4 && weakest_curv > 1e-2;
  return {ok, fmt::format("max jump {:.2e}; s'' left of alpha_c <= {:.1e}, right >= {:.3f} in magnitude",
                          worst_jump, worst_flat, weakest_curv)};
}

Outcome counting_oracles() {
  Rng rng(7);
  int agree = 0;
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 4 + rng.below(11);
    const double M = 1.0 + static_cast<double>(rng.below(12));
    const double alpha = 1.0 - std::log2(M) / static_cast<double>(n);
    const double p = 0.1 + 0.8 * rng.uniform();
    const Instance inst = generate(n, alpha, p, 1000 + k);
    if (inst.clusters.size() > 12) return {false, "generator exceeded M"};
    if (count_solutions_ie(inst) == count_solutions_bruteforce(inst)) ++agree;
  }
  return {agree == 100, fmt::format("{}/100 instances agree", agree)};
}

Outcome moment_concentration() {
  const std::size_t n = 20;
  const double p = 0.5;
  const std::size_t M = std::size_t{1} << 14;
  Rng rng(11);
  Instance inst;
  inst.n = n;
  inst.alpha = 1.0 - 14.0 / 20.0;
  inst.p = p;
  for (std::size_t i = 0; i < M; ++i) inst.clusters.push_back(random_subcube(n, p, rng));
  std::vector<double> hist(n + 1, 0.0);
  for (const Subcube& c : inst.clusters) hist[c.free_count()] += 1.0;
  std::vector<double> expected = testutil::binomial_pmf(n, 1.0 - p);
  for (double& e : expected) e *= static_cast<double>(M);
  const auto chi = testutil::chi_square(hist, expected, 1e-3);

  const int samples = 10000;
  double sum = 0.0;
  double sum2 = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double c = static_cast<double>(clusters_containing(random_configuration(n, rng), inst).count);
    sum += c;
    sum2 += c * c;
  }
  const double mean = sum / samples;
  const double sd = std::sqrt((sum2 / samples - mean * mean) / samples);
  const double target = static_cast<double>(M) * std::pow(1.0 - p / 2.0, static_cast<double>(n));
  const bool ok = chi.pass && std::abs(mean - target) <= 3.0 * sd;
  return {ok, fmt::format("chi2 {:.1f} <= {:.1f}; containing mean {:.3f} vs {:.3f} (3 sigma {:.3f})",
                          chi.statistic, chi.critical, mean, target, 3 * sd)};
}

Outcome distance_laws() {
  const std::size_t n = 30;
  const double p = 0.95;
  Rng rng(13);
  std::vector<double> hist(n + 1, 0.0);
  std::size_t diameter_mismatch = 0;
  const int pairs = 100000;
  for (int k = 0; k < pairs; ++k) {
    const Subcube a = random_subcube(n, p, rng);
    const Subcube b = random_subcube(n, p, rng);
    hist[pair_distance(a, b)] += 1.0;
    if (diameter(a) != a.free_count()) ++diameter_mismatch;
    if (diameter(b) != b.free_count()) ++diameter_mismatch;
  }
  std::vector<double> expected = testutil::binomial_pmf(n, p * p / 2.0);
  for (double& e : expected) e *= pairs;
  const auto chi = testutil::chi_square(hist, expected, 1e-3);
  return {chi.pass && diameter_mismatch == 0,
          fmt::format("chi2 {:.1f} <= {:.1f} ({} dof); diameter mismatches {}", chi.statistic,
                      chi.critical, chi.dof, diameter_mismatch)};
}

Outcome xsat_properties() {
  const double p = 0.95;
  const AuxiliaryThresholds aux = auxiliary_thresholds(p);
  // The slope diverges like log(1-x) at x = 1, so adjacent samples differ by
  // about h log2(1/h) / 2 there; h = 1e-8 keeps that well under 1e-6.
  const std::size_t grid = 100000000;
  double prev = xsat_threshold(0.0, p, aux.x0);
  double max_jump = 0.0;
  for (std::size_t i = 1; i <= grid; ++i) {
    const double v = xsat_threshold(static_cast<double>(i) / static_cast<double>(grid), p, aux.x0);
    max_jump = std::max(max_jump, std::abs(v - prev));
    prev = v;
  }
  const double q = p * p / 2.0;
  double seam_jump = 0.0;
  for (double s : {1.0 - p, aux.x0, q, 1.0 - q}) {
    seam_jump = std::max(seam_jump, std::abs(xsat_threshold(s + 1e-12, p, aux.x0) - xsat_threshold(s - 1e-12, p, aux.x0)));
  }
  const bool exact = xsat_threshold(1.0 - p, p) == 1.0 && xsat_threshold(q, p) == 1.0;
  const double sep_err = std::abs(xsat_threshold(1.0, p) - aux.alpha_sep);
  const double ad = thresholds(p).alpha_d;
  const bool order = ad < aux.alpha_sep && aux.alpha_sep < aux.alpha_gap;
  const bool ok = max_jump < 1e-6 && seam_jump < 1e-6 && exact && sep_err < 1e-9 && order;
  return {ok, fmt::format("grid jump {:.2e}, seam jump {:.1e}, exact ones {}, |alpha_s(1)-alpha_sep| {:.1e}, "
                          "{:.4f} < {:.4f} < {:.4f}",
                          max_jump, seam_jump, exact, sep_err, ad, aux.alpha_sep, aux.alpha_gap)};
}

Outcome walk_trend() {
  const double p = 0.5;
  const double alpha = thresholds(p).alpha_d + 0.05;
  const std::size_t instances = 10;
  const std::size_t per_instance = 100;
  std::vector<double> frac;
  std::string detail;
  for (std::size_t n : {16u, 24u, 32u}) {
    std::size_t exited = 0;
    std::size_t away = 0;
    for (std::size_t k = 0; k < instances; ++k) {
      const Instance inst = generate(n, alpha, p, 500 + 31 * n + k);
      const EscapeStats st = escape_experiment(inst, per_instance, n * n, 77 + k, 1);
      exited += st.exited_within;
      away += st.escaped_at_end;
    }
    const double total = static_cast<double>(instances * per_instance);
    frac.push_back(static_cast<double>(exited) / total);
    detail += fmt::format("n={} escape {:.3f} (away at end {:.3f}); ", n, frac.back(),
                          static_cast<double>(away) / total);
  }
  const bool mono = frac[0] > frac[1] && frac[1] > frac[2];
  detail += fmt::format("union-bound exponent {:.3f}; ", max_escape_exponent({alpha, p}).value);
  const Instance liquid = generate(16, thresholds(p).alpha_d - 0.2, p, 99);
  const double acc = escape_experiment(liquid, 200, 256, 3, 1).mean_acceptance;
  detail += fmt::format("acceptance below alpha_d {:.3f}", acc);
  return {mono && acc > 0.95, detail};
}

Outcome belief_decimation() {
  Rng rng(17);
  int ok = 0;
  int runs = 0;
  while (runs < 200) {
    const std::size_t n = 6 + rng.below(13);
    const double alpha = 0.3 + 0.65 * rng.uniform();
    const double p = 0.2 + 0.7 * rng.uniform();
    const Instance inst = generate(n, alpha, p, rng());
    if (inst.clusters.empty()) continue;
    ++runs;
    Rng drng(rng());
    const DecimationRun run = run_decimation(inst, Estimator::Belief, drng);
    if (run.success && is_solution(run.assignment, inst)) ++ok;
  }
  return {ok == 200, fmt::format("{}/200 runs end at a verified solution", ok)};
}

Outcome transition_formula() {
  const long double p = 0.5L;
  const long double ad = std::log2(2.0L - p);
  const long double ac = p / (2.0L - p) + ad;
  const long double tc = (ac - 0.75L) / (ac - ad);
  const long double ts = 0.25L / (1.0L - ad);
  const TransitionTimes t = transition_times(0.75, 0.5);
  const double ec = std::abs(t.t_c - static_cast<double>(tc));
  const double es = std::abs(t.t_s - static_cast<double>(ts));
  return {ec < 1e-12 && es < 1e-12, fmt::format("t_c {:.6f} (err {:.1e}), t_s {:.6f} (err {:.1e})", t.t_c, ec, t.t_s, es)};
}

// s(e) on the non-condensed closed form, extended past e*, by dense scan and
// golden refinement.
double s_closed_form(const LandscapeParams& lp, double e) {
  auto f = [&](double e0) {
    const double u = e - e0;
    if (u < 0.0) return -kInf;
    return 1.0 - binary_kl(u, 0.5 * lp.p) + sigma(lp, e0);
  };
  const int n = 4000;
  int best = 0;
  double bv = -kInf;
  for (int i = 0; i <= n; ++i) {
    const double v = f(e * i / n);
    if (v > bv) {
      bv = v;
      best = i;
    }
  }
  double a = e * std::max(0, best - 1) / n;
  double b = e * std::min(n, best + 1) / n;
  const double g = (std::sqrt(5.0) - 1) / 2;
  for (int it = 0; it < 150; ++it) {
    const double x1 = b - g * (b - a);
    const double x2 = a + g * (b - a);
    if (f(x1) < f(x2)) a = x1; else b = x2;
  }
  return std::max(bv, f(0.5 * (a + b)));
}

Outcome energy_thermodynamics() {
  const LandscapeParams lp{-0.05, 0.0, 0.5, 0.6, 40};
  const Thermodynamics th(lp);
  const Temperatures& T = th.temperatures();
  const TypicalEnergy& t = th.typical();
  // Bisection oracle for the smaller root of Sigma.
  double lo = 1e-300, hi = 1.0 / std::exp(1.0);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (sigma(lp, mid) < 0.0 ? lo : hi) = mid;
  }
  const bool egs_ok = std::abs(T.e_gs - lo) < 1e-10 && std::abs(T.e_gs - 0.0281) < 2e-4;
  const double s_err = std::abs(th.entropy(t.e_star).s - 1.0);
  const double h = 1e-6;
  const double slope_s = (s_closed_form(lp, t.e_star + h) - s_closed_form(lp, t.e_star - h)) / (2 * h);
  const double slope_dyn = (valley_entropy(t.e_star + h, t.e0_star, t.s0_star) -
                            valley_entropy(t.e_star - h, t.e0_star, t.s0_star)) / (2 * h);
  const double slope_err = std::abs(slope_s - slope_dyn);
  if (!T.T_c) return {false, "no condensation temperature"};
  const double m_err = std::abs(th.pd_parameter(*T.T_c) - 1.0);

  // Pointwise curve shapes on 200 temperatures.
  const auto grid = temperature_grid(0.02, 2.0, 200);
  const auto rows = th.diagram(grid);
  int bad = 0;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const DiagramRow& r = rows[k];
    if (r.T > T.T_d) {
      bad += !(r.e_eq == t.e_star && r.e_dyn == t.e_star && r.m == 1.0);
    } else {
      bad += !(r.e_dyn + 1e-12 >= r.e_eq);
      bad += !(r.e_dyn >= t.e0_star - 1e-12 && r.e_dyn <= t.e_star + 1e-12);
      if (r.T >= *T.T_c) {
        bad += !(r.e_eq >= *T.e_c - 1e-9 && r.e_eq <= t.e_star + 1e-12 && r.m == 1.0);
      } else {
        bad += !(r.e_eq >= T.e_gs - 1e-12 && r.e_eq <= *T.e_c + 1e-9 && r.m > 0.0 && r.m < 1.0);
      }
    }
    if (k > 0) {
      bad += !(r.e_eq >= rows[k - 1].e_eq - 1e-12);
      bad += !(r.e_dyn >= rows[k - 1].e_dyn - 1e-12);
      bad += !(r.m >= rows[k - 1].m - 1e-12);
    }
  }
  const bool ok = egs_ok && s_err < 1e-8 && slope_err < 1e-5 && *T.T_c <= T.T_d && m_err < 1e-6 && bad == 0;
  return {ok, fmt::format("e_gs {:.6f}, |s(e*)-1| {:.1e}, slope gap {:.1e}, T_c {:.4f} <= T_d {:.4f}, "
                          "|m(T_c)-1| {:.1e}, shape violations {}",
                          T.e_gs, s_err, slope_err, *T.T_c, T.T_d, m_err, bad)};
}

Outcome metropolis_validity() {
  // Boltzmann check on every configuration of a 10-variable landscape.
  const LandscapeParams small{-0.05, 0.0, 0.5, 0.6, 10};
  const Landscape land = generate_landscape(small, 21);
  const double T = 1.0;
  const std::size_t states = 1024;
  std::vector<double> weight(states);
  double Z = 0.0;
  for (std::size_t x = 0; x < states; ++x) {
    weight[x] = std::exp2(-static_cast<double>(config_energy(BitVec::from_u64(10, x), land).energy) / T);
    Z += weight[x];
  }
  Rng rng(23);
  MetropolisChain chain(land, random_configuration(10, rng));
  for (int k = 0; k < 10000; ++k) chain.step(T, rng);
  const std::size_t steps = 10000000;
  const std::size_t thin = 100;
  std::vector<double> visits(states, 0.0);
  for (std::size_t k = 1; k <= steps; ++k) {
    chain.step(T, rng);
    if (k % thin == 0) visits[chain.state().to_u64()] += 1.0;
  }
  std::vector<double> expected(states);
  for (std::size_t x = 0; x < states; ++x) expected[x] = weight[x] / Z * static_cast<double>(steps / thin);
  const auto chi = testutil::chi_square(visits, expected, 0.01);

  // Quench from a random start to T between T_c and T_d on n = 40.
  const LandscapeParams big{-0.05, 0.0, 0.5, 0.6, 40};
  const Thermodynamics th(big);
  const double Tq = 1.0;
  const double e_dyn = th.dynamical_energy(Tq);
  double mean = 0.0;
  const int replicas = 8;
  for (int r = 0; r < replicas; ++r) {
    const Landscape l40 = generate_landscape(big, 100 + r);
    Rng qrng = Rng::stream(41, r);
    const ScheduleStep sched[] = {{Tq, 2000}};
    const EnergyTrace tr = metropolis(l40, sched, random_configuration(40, qrng), qrng);
    double tail = 0.0;
    for (std::size_t k = 1000; k < 2000; ++k) tail += tr.sweeps[k].energy;
    mean += tail / 1000.0 / replicas;
  }
  const double rel = std::abs(mean - e_dyn) / e_dyn;
  const bool ok = chi.pass && rel <= 0.10 && Tq > *th.temperatures().T_c && Tq < th.temperatures().T_d;
  return {ok, fmt::format("Boltzmann chi2 {:.1f} <= {:.1f} ({} dof); quench e {:.4f} vs e_dyn {:.4f} ({:.1f}%)",
                          chi.statistic, chi.critical, chi.dof, mean, e_dyn, 100 * rel)};
}

Outcome pd_cross_oracle() {
  const int draws = 10000;
  const std::size_t cutoff = 1000;
  bool ok = true;
  std::string detail;
  for (double m : {0.2, 0.5, 0.8}) {
    struct Acc {
      double w1 = 0, w1sq = 0, y = 0, ysq = 0;
      void add(const PdSample& s) {
        double y2 = 0.0;
        for (double w : s.weights) y2 += w * w;
        w1 += s.weights[0];
        w1sq += s.weights[0] * s.weights[0];
        y += y2;
        ysq += y2 * y2;
      }
    } pp, sb;
    Rng r1 = Rng::stream(31, static_cast<std::uint64_t>(m * 10));
    Rng r2 = Rng::stream(37, static_cast<std::uint64_t>(m * 10));
    for (int k = 0; k < draws; ++k) {
      pp.add(pd_sample_point_process(m, cutoff, r1));
      sb.add(pd_sample_stick_breaking(m, cutoff, r2));
    }
    auto z = [&](double a, double a2, double b, double b2) {
      const double ma = a / draws, mb = b / draws;
      const double va = (a2 / draws - ma * ma) / draws, vb = (b2 / draws - mb * mb) / draws;
      return std::abs(ma - mb) / std::sqrt(va + vb);
    };
    const double z1 = z(pp.w1, pp.w1sq, sb.w1, sb.w1sq);
    const double z2 = z(pp.y, pp.ysq, sb.y, sb.ysq);
    ok = ok && z1 <= 3.0 && z2 <= 3.0;
    detail += fmt::format("m={}: E[w1] {:.4f}/{:.4f} ({:.1f} sd), E[sum w^2] {:.4f}/{:.4f} ({:.1f} sd), 1-m {:.1f}; ",
                          m, pp.w1 / draws, sb.w1 / draws, z1, pp.y / draws, sb.y / draws, z2, 1 - m);
  }
  detail.resize(detail.size() - 2);
  return {ok, detail};
}

}  // namespace

int main() {
  report(1, "clustering threshold at p=0.95", threshold_value);
  report(2, "total entropy continuity and Kauzmann kink", kauzmann_structure);
  report(3, "inclusion-exclusion equals brute force", counting_oracles);
  report(4, "free-count and containment moments", moment_concentration);
  report(5, "pair distance law and diameters", distance_laws);
  report(6, "x-satisfiability curve", xsat_properties);
  report(7, "walk escape trend", walk_trend);
  report(8, "belief decimation succeeds", belief_decimation);
  report(9, "transition times", transition_formula);
  report(10, "energy thermodynamics", energy_thermodynamics);
  report(11, "Metropolis validity", metropolis_validity);
  report(12, "Poisson-Dirichlet samplers agree", pd_cross_oracle);
  return failures == 0 ? 0 : 1;
}
