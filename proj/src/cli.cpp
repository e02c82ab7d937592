#include "rsm/cli.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "rsm/analytic.hpp"
#include "rsm/decimation.hpp"
#include "rsm/energy.hpp"
#include "rsm/errors.hpp"
#include "rsm/instance.hpp"
#include "rsm/io.hpp"
#include "rsm/walkdyn.hpp"
#include "rsm/xsat.hpp"

namespace rsm::cli {

namespace {

using Cell = CsvWriter::Cell;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

struct Globals {
  std::string out;
  std::string format = "csv";
  std::uint64_t seed = 0;
  unsigned threads = std::max(1U, std::thread::hardware_concurrency());
  double tol = 1e-12;

  Tolerances tolerances() const {
    Tolerances t;
    t.root_tol = tol;
    return t;
  }
};

/// Writes to --out when given, else to the fallback stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty() && path != "-") {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open " + path + " for writing");
      os_ = &file_;
    }
  }
  std::ostream& stream() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

Json cell_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> Json {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, double>) {
          return finite_or_throw(v, "output value");
        } else {
          return v;
        }
      },
      c);
}

Json table_json(const Table& t) {
  Json arr = Json::array();
  for (const auto& r : t.rows) {
    Json obj = Json::object();
    for (std::size_t i = 0; i < r.size(); ++i) obj[t.header[i]] = cell_json(r[i]);
    arr.push_back(std::move(obj));
  }
  return arr;
}

void write_csv(std::ostream& os, const Table& t) {
  CsvWriter w(os, t.header);
  for (const auto& r : t.rows) w.row(r);
}

void emit(const Globals& g, std::ostream& fallback, const Table& t) {
  Sink sink(g.out, fallback);
  if (g.format == "json") {
    sink.stream() << table_json(t).dump(1) << '\n';
  } else {
    write_csv(sink.stream(), t);
  }
}

/// Several named tables: blank-line separated CSV blocks, or one JSON object.
void emit_blocks(const Globals& g, std::ostream& fallback,
                 const std::vector<std::pair<std::string, Table>>& blocks) {
  Sink sink(g.out, fallback);
  if (g.format == "json") {
    Json obj = Json::object();
    for (const auto& [name, t] : blocks) obj[name] = table_json(t);
    sink.stream() << obj.dump(1) << '\n';
    return;
  }
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (i > 0) sink.stream() << '\n';
    write_csv(sink.stream(), blocks[i].second);
  }
}

void emit_json(const Globals& g, std::ostream& fallback, const Json& j) {
  Sink sink(g.out, fallback);
  sink.stream() << j.dump(1) << '\n';
}

Instance read_instance(const std::string& path) { return instance_from_json(load_json(path)); }

// ---------------------------------------------------------------------------

struct PhaseOpts {
  double p = 0.0;
  std::optional<double> alpha;
  double alpha_min = 0.0;
  double alpha_max = 1.0;
  std::size_t steps = 101;
};

int run_phase(const Globals& g, const PhaseOpts& o, std::ostream& out, std::ostream& err) {
  std::vector<double> alphas;
  if (o.alpha) {
    alphas.push_back(*o.alpha);
  } else {
    if (o.steps < 2) throw DomainError("--steps must be >= 2");
    for (std::size_t i = 0; i < o.steps; ++i) {
      alphas.push_back(o.alpha_min + (o.alpha_max - o.alpha_min) * static_cast<double>(i) /
                                         static_cast<double>(o.steps - 1));
    }
  }
  Table t{{"alpha", "p", "phase", "s_tot", "s_star", "sigma_star", "m"}, {}};
  PhaseReport last{};
  for (double a : alphas) {
    last = phase_report({a, o.p}, g.tolerances());
    t.rows.push_back({a, o.p, std::string(to_string(last.phase)), last.s_tot, last.s_star,
                      last.sigma_star, last.m});
  }
  emit(g, out, t);
  if (o.alpha) {
    err << fmt::format("phase={} alpha={:.6g} p={:.6g} alpha_d={:.6g} alpha_c={:.6g} s_tot={:.6g} m={:.6g}\n",
                       to_string(last.phase), *o.alpha, o.p, last.thresholds.alpha_d,
                       last.thresholds.alpha_c, last.s_tot, last.m);
  } else {
    err << fmt::format("phase diagram p={:.6g}: {} points, alpha_d={:.6g} alpha_c={:.6g}\n", o.p,
                       alphas.size(), last.thresholds.alpha_d, last.thresholds.alpha_c);
  }
  return 0;
}

struct XsatOpts {
  double p = 0.0;
  std::size_t points = 201;
};

int run_xsat(const Globals& g, const XsatOpts& o, std::ostream& out, std::ostream& err) {
  if (o.points < 2) throw DomainError("--points must be >= 2");
  const Tolerances tol = g.tolerances();
  const AuxiliaryThresholds aux = auxiliary_thresholds(o.p, tol);
  const double alpha_c = thresholds(o.p).alpha_c;
  Table head{{"x0", "alpha_sep", "alpha_gap", "alpha_c"},
             {{aux.x0, aux.alpha_sep, aux.alpha_gap, alpha_c}}};
  Table curve{{"x", "alpha_s_of_x"}, {}};
  for (std::size_t i = 0; i < o.points; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(o.points - 1);
    curve.rows.push_back({x, xsat_threshold(x, o.p, aux.x0)});
  }
  emit_blocks(g, out, {{"thresholds", head}, {"curve", curve}});
  err << fmt::format("xsat p={:.6g}: x0={:.6g} alpha_sep={:.6g} alpha_gap={:.6g}\n", o.p, aux.x0,
                     aux.alpha_sep, aux.alpha_gap);
  return 0;
}

struct InstanceOpts {
  std::size_t n = 0;
  double alpha = 0.0;
  double p = 0.0;
  std::string file;
  std::string method = "auto";
  std::size_t count = 10;
};

int run_instance_gen(const Globals& g, const InstanceOpts& o, std::ostream& out,
                     std::ostream& err) {
  const Instance inst = generate(o.n, o.alpha, o.p, g.seed);
  if (inst.clusters.empty()) err << "warning: unsat regime, the instance has no clusters\n";
  emit_json(g, out, to_json(inst));
  err << fmt::format("instance n={} alpha={:.6g} p={:.6g} seed={} clusters={}\n", inst.n,
                     inst.alpha, inst.p, inst.seed, inst.clusters.size());
  return 0;
}

int run_instance_count(const Globals& g, const InstanceOpts& o, std::ostream& out,
                       std::ostream& err) {
  const Instance inst = read_instance(o.file);
  std::string method = o.method;
  if (method == "auto") method = inst.clusters.size() <= 20 ? "ie" : "bruteforce";
  const std::uint64_t count =
      method == "ie" ? count_solutions_ie(inst) : count_solutions_bruteforce(inst);
  const double entropy =
      count == 0 ? 0.0 : std::log2(static_cast<double>(count)) / static_cast<double>(inst.n);
  Table t{{"n", "clusters", "solutions", "entropy_per_variable", "method"},
          {{static_cast<unsigned long long>(inst.n),
            static_cast<unsigned long long>(inst.clusters.size()),
            static_cast<unsigned long long>(count), entropy, method}}};
  emit(g, out, t);
  err << fmt::format("solutions={} (method {})\n", count, method);
  return 0;
}

int run_instance_stats(const Globals& g, const InstanceOpts& o, std::ostream& out,
                       std::ostream& err) {
  const Instance inst = read_instance(o.file);
  const auto hist = cluster_entropy_histogram(inst);
  const auto m = static_cast<double>(inst.clusters.size());
  Table t{{"free_count", "clusters", "expected"}, {}};
  // Expected M * Binomial(n, 1-p) pmf, accumulated in logs.
  const auto n = static_cast<double>(inst.n);
  for (std::size_t k = 0; k < hist.size(); ++k) {
    const auto kd = static_cast<double>(k);
    double expected = 0.0;
    if (inst.p > 0.0 && inst.p < 1.0) {
      const double log_pmf = std::lgamma(n + 1) - std::lgamma(kd + 1) - std::lgamma(n - kd + 1) +
                             kd * std::log(1.0 - inst.p) + (n - kd) * std::log(inst.p);
      expected = m * std::exp(log_pmf);
    } else {
      expected = (inst.p == 0.0 ? k == inst.n : k == 0) ? m : 0.0;
    }
    t.rows.push_back({static_cast<unsigned long long>(k), static_cast<unsigned long long>(hist[k]),
                      expected});
  }
  emit(g, out, t);
  err << fmt::format("clusters={} n={}\n", inst.clusters.size(), inst.n);
  return 0;
}

int run_instance_sample(const Globals& g, const InstanceOpts& o, std::ostream& out,
                        std::ostream& err) {
  const Instance inst = read_instance(o.file);
  if (inst.clusters.empty()) throw UnsatError("instance has no clusters to sample from");
  const SolutionSampler sampler(inst);
  Table t{{"index", "config", "containing_clusters"}, {}};
  for (std::size_t i = 0; i < o.count; ++i) {
    Rng rng = Rng::stream(g.seed, i);
    const Configuration c = sampler(rng);
    t.rows.push_back({static_cast<unsigned long long>(i), c.to_hex(),
                      static_cast<unsigned long long>(clusters_containing(c, inst).count)});
  }
  emit(g, out, t);
  err << fmt::format("sampled {} uniform solutions\n", o.count);
  return 0;
}

struct DecimateOpts {
  std::string file;
  std::string estimator = "belief";
  std::size_t batch = 1;
};

int run_decimate(const Globals& g, const DecimateOpts& o, std::ostream& out, std::ostream& err) {
  const Instance inst = read_instance(o.file);
  if (inst.clusters.empty()) err << "warning: unsat regime, the instance has no clusters\n";
  const Estimator est = o.estimator == "survey" ? Estimator::Survey : Estimator::Belief;
  Rng rng = Rng::stream(g.seed, 0);
  const DecimationRun run = run_decimation(inst, est, rng, o.batch);
  Table t{{"step", "variable", "value", "n_compatible_clusters", "max_bias"}, {}};
  for (const StepRecord& s : run.steps) {
    t.rows.push_back({static_cast<unsigned long long>(s.step),
                      static_cast<unsigned long long>(s.variable),
                      static_cast<unsigned long long>(s.value ? 1 : 0),
                      static_cast<unsigned long long>(s.n_compatible_clusters), s.max_bias});
  }
  emit(g, out, t);
  if (run.success) {
    err << fmt::format("decimation ({}) found a solution: {}\n", o.estimator, run.assignment.to_hex());
  } else {
    err << fmt::format("decimation ({}) failed: {}\n", o.estimator, run.failure);
  }
  return 0;
}

struct WalkOpts {
  std::string file;
  std::size_t trials = 100;
  std::optional<std::size_t> steps;
  double coefficient = 1.0;
  double exponent = 2.0;
};

int run_walk(const Globals& g, const WalkOpts& o, std::ostream& out, std::ostream& err) {
  const Instance inst = read_instance(o.file);
  const std::size_t steps = o.steps ? *o.steps : walk_length(inst.n, o.coefficient, o.exponent);
  const EscapeStats st = escape_experiment(inst, o.trials, steps, g.seed, g.threads);
  Table t{{"trial", "first_exit_step_or_-1", "acceptance_rate"}, {}};
  for (const TrialRecord& r : st.records) {
    t.rows.push_back({static_cast<unsigned long long>(r.trial), r.first_exit_step, r.acceptance_rate});
  }
  emit(g, out, t);
  err << fmt::format(
      "walk steps={} trials={}: exit fraction {:.4g} [{:.4g}, {:.4g}], mean acceptance {:.4g}\n",
      steps, o.trials, st.within_fraction.estimate, st.within_fraction.lower,
      st.within_fraction.upper, st.mean_acceptance);
  return 0;
}

struct EnergyOpts {
  LandscapeParams params{-0.05, 0.0, 0.5, 0.6, 40};
  double tmin = 0.05;
  double tmax = 1.5;
  std::size_t tsteps = 200;
  bool natural = false;
  double t = 1.0;
  std::size_t sweeps = 2000;
  std::size_t hot_sweeps = 0;
  std::string landscape_file;
  std::string entropy_file;
  std::size_t e_points = 200;
};

/// Temperatures are handled in bit units internally; natural units differ by ln 2.
double to_bits(double T, bool natural) { return natural ? T * kLn2 : T; }
double from_bits(double T, bool natural) { return natural ? T / kLn2 : T; }

int run_energy_diagram(const Globals& g, const EnergyOpts& o, std::ostream& out,
                       std::ostream& err) {
  const Thermodynamics th(o.params, g.tolerances());
  std::vector<double> grid = temperature_grid(o.tmin, o.tmax, o.tsteps);
  for (double& T : grid) T = to_bits(T, o.natural);
  Table t{{"T", "e_eq", "e_dyn", "m"}, {}};
  for (const DiagramRow& r : th.diagram(grid)) {
    t.rows.push_back({from_bits(r.T, o.natural), r.e_eq, r.e_dyn, r.m});
  }
  emit(g, out, t);
  if (!o.entropy_file.empty()) {
    // s(e) on [e_gs, e*]; s_dyn is blank below the typical bottom e0*.
    if (o.e_points < 2) throw DomainError("--epoints must be >= 2");
    const double lo = th.temperatures().e_gs;
    const double hi = th.typical().e_star;
    Table s{{"e", "s", "branch", "s_dyn"}, {}};
    for (std::size_t i = 0; i < o.e_points; ++i) {
      const double e = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(o.e_points - 1);
      const EntropyPoint pt = th.entropy(e);
      Cell dyn = std::string();
      if (e >= th.typical().e0_star) dyn = th.dynamical_entropy(e);
      s.rows.push_back({e, pt.s, std::string(to_string(pt.branch)), dyn});
    }
    Globals ge = g;
    ge.out = o.entropy_file;
    ge.format = "csv";
    emit(ge, out, s);
  }
  const Temperatures& tt = th.temperatures();
  const std::string tc = tt.T_c ? fmt::format("{:.6g}", from_bits(*tt.T_c, o.natural)) : "none";
  err << fmt::format("e_gs={:.6g} e0*={:.6g} e*={:.6g} T_d={:.6g} T_c={}{}\n", tt.e_gs,
                     th.typical().e0_star, tt.e_star, from_bits(tt.T_d, o.natural), tc,
                     o.natural ? " (natural units)" : "");
  return 0;
}

Landscape landscape_for(const Globals& g, const EnergyOpts& o) {
  if (!o.landscape_file.empty()) return landscape_from_json(load_json(o.landscape_file));
  return generate_landscape(o.params, g.seed);
}

int run_energy_landscape(const Globals& g, const EnergyOpts& o, std::ostream& out,
                         std::ostream& err) {
  const Landscape land = generate_landscape(o.params, g.seed);
  if (land.valleys.empty()) err << "warning: no energy level has Sigma >= 0, the landscape is empty\n";
  emit_json(g, out, to_json(land));
  err << fmt::format("landscape n={} valleys={} seed={}\n", land.n(), land.valleys.size(), land.seed);
  return 0;
}

int run_energy_quench(const Globals& g, const EnergyOpts& o, std::ostream& out,
                      std::ostream& err) {
  const Landscape land = landscape_for(g, o);
  // Streams 0..n seed the landscape levels; the dynamics uses stream n+1.
  Rng rng = Rng::stream(g.seed, land.n() + 1);
  const Configuration start = random_configuration(land.n(), rng);
  std::vector<ScheduleStep> schedule;
  if (o.hot_sweeps > 0) schedule.push_back({std::numeric_limits<double>::infinity(), o.hot_sweeps});
  schedule.push_back({to_bits(o.t, o.natural), o.sweeps});
  const EnergyTrace trace = metropolis(land, schedule, start, rng);
  Table t{{"sweep", "energy"}, {}};
  for (const SweepRecord& r : trace.sweeps) {
    t.rows.push_back({static_cast<unsigned long long>(r.sweep), r.energy});
  }
  emit(g, out, t);
  err << fmt::format("quench to T={:.6g}: final energy per variable {:.6g}, acceptance {:.4g}\n", o.t,
                     static_cast<double>(trace.final_energy) / static_cast<double>(land.n()),
                     static_cast<double>(trace.accepted) / static_cast<double>(trace.proposed));
  return 0;
}

void add_landscape_flags(CLI::App* sub, EnergyOpts& o) {
  sub->add_option("--a", o.params.a, "Sigma(e0) constant term");
  sub->add_option("--b", o.params.b, "Sigma(e0) linear term");
  sub->add_option("--c", o.params.c, "Sigma(e0) e0 ln e0 coefficient")->check(CLI::NonNegativeNumber);
  sub->add_option("--p", o.params.p, "freezing probability")->check(CLI::Range(0.0, 1.0));
}

}  // namespace

int dispatch(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random-subcube model toolkit", "rsm"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--out", g.out, "output file (default stdout)");
  app.add_option("--format", g.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", g.seed, "64-bit seed");
  app.add_option("--threads", g.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--tol", g.tol, "root-finding tolerance")->check(CLI::PositiveNumber);

  PhaseOpts phase_o;
  auto* phase_cmd = app.add_subcommand("phase", "phase report at (alpha, p) or along alpha");
  phase_cmd->add_option("--p", phase_o.p, "freezing probability")->required()->check(CLI::Range(0.0, 1.0));
  phase_cmd->add_option("--alpha", phase_o.alpha, "single alpha")->check(CLI::NonNegativeNumber);
  phase_cmd->add_option("--alpha-min", phase_o.alpha_min)->check(CLI::NonNegativeNumber);
  phase_cmd->add_option("--alpha-max", phase_o.alpha_max)->check(CLI::NonNegativeNumber);
  phase_cmd->add_option("--steps", phase_o.steps, "grid points for a sweep");

  XsatOpts xsat_o;
  auto* xsat_cmd = app.add_subcommand("xsat", "x-satisfiability threshold curve");
  xsat_cmd->add_option("--p", xsat_o.p, "freezing probability")->required()->check(CLI::Range(0.0, 1.0));
  xsat_cmd->add_option("--points", xsat_o.points, "x grid points");

  InstanceOpts inst_o;
  auto* inst_cmd = app.add_subcommand("instance", "explicit instances");
  inst_cmd->require_subcommand(1);
  auto* gen_cmd = inst_cmd->add_subcommand("gen", "generate an instance");
  gen_cmd->add_option("--n", inst_o.n)->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--alpha", inst_o.alpha)->required()->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--p", inst_o.p)->required()->check(CLI::Range(0.0, 1.0));
  auto* count_cmd = inst_cmd->add_subcommand("count", "exact solution count");
  count_cmd->add_option("--instance", inst_o.file)->required();
  count_cmd->add_option("--method", inst_o.method)->check(CLI::IsMember({"auto", "ie", "bruteforce"}));
  auto* stats_cmd = inst_cmd->add_subcommand("stats", "free-count histogram");
  stats_cmd->add_option("--instance", inst_o.file)->required();
  auto* sample_cmd = inst_cmd->add_subcommand("sample", "uniform solutions");
  sample_cmd->add_option("--instance", inst_o.file)->required();
  sample_cmd->add_option("--count", inst_o.count);
  for (auto* s : {gen_cmd, count_cmd, stats_cmd, sample_cmd}) s->fallthrough();
  inst_cmd->fallthrough();

  DecimateOpts dec_o;
  auto* dec_cmd = app.add_subcommand("decimate", "decimation with exact estimators");
  dec_cmd->add_option("--instance", dec_o.file)->required();
  dec_cmd->add_option("--estimator", dec_o.estimator)->check(CLI::IsMember({"belief", "survey"}));
  dec_cmd->add_option("--batch", dec_o.batch, "variables fixed per evaluation")->check(CLI::PositiveNumber);

  WalkOpts walk_o;
  auto* walk_cmd = app.add_subcommand("walk", "solution-space random walks");
  walk_cmd->add_option("--instance", walk_o.file)->required();
  walk_cmd->add_option("--trials", walk_o.trials);
  walk_cmd->add_option("--steps", walk_o.steps, "walk length (default c n^d)");
  walk_cmd->add_option("--c", walk_o.coefficient, "length coefficient")->check(CLI::PositiveNumber);
  walk_cmd->add_option("--d", walk_o.exponent, "length exponent")->check(CLI::NonNegativeNumber);

  EnergyOpts en_o;
  auto* en_cmd = app.add_subcommand("energy", "energetic landscape");
  en_cmd->require_subcommand(1);
  en_cmd->fallthrough();
  auto* diag_cmd = en_cmd->add_subcommand("diagram", "energy-temperature diagram");
  add_landscape_flags(diag_cmd, en_o);
  diag_cmd->add_option("--tmin", en_o.tmin)->check(CLI::PositiveNumber);
  diag_cmd->add_option("--tmax", en_o.tmax)->check(CLI::PositiveNumber);
  diag_cmd->add_option("--tsteps", en_o.tsteps)->check(CLI::PositiveNumber);
  diag_cmd->add_flag("--natural", en_o.natural, "temperatures in natural units (Boltzmann e^(-E/T))");
  diag_cmd->add_option("--entropy-out", en_o.entropy_file, "also write s(e) and s_dyn(e) as CSV");
  diag_cmd->add_option("--epoints", en_o.e_points, "energy grid points for --entropy-out");
  auto* quench_cmd = en_cmd->add_subcommand("quench", "Metropolis quench from a random start");
  add_landscape_flags(quench_cmd, en_o);
  quench_cmd->add_option("--n", en_o.params.n)->check(CLI::PositiveNumber);
  quench_cmd->add_option("--t", en_o.t, "target temperature")->check(CLI::NonNegativeNumber);
  quench_cmd->add_option("--sweeps", en_o.sweeps, "sweeps at the target temperature");
  quench_cmd->add_option("--hot-sweeps", en_o.hot_sweeps, "sweeps at infinite temperature first");
  quench_cmd->add_option("--landscape", en_o.landscape_file, "landscape JSON instead of generating");
  quench_cmd->add_flag("--natural", en_o.natural, "temperature in natural units");
  auto* land_cmd = en_cmd->add_subcommand("landscape", "generate an explicit landscape");
  add_landscape_flags(land_cmd, en_o);
  land_cmd->add_option("--n", en_o.params.n)->check(CLI::PositiveNumber);
  for (auto* s : {diag_cmd, quench_cmd, land_cmd}) s->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << app.help();
    return 2;
  }

  try {
    if (phase_cmd->parsed()) return run_phase(g, phase_o, out, err);
    if (xsat_cmd->parsed()) return run_xsat(g, xsat_o, out, err);
    if (gen_cmd->parsed()) return run_instance_gen(g, inst_o, out, err);
    if (count_cmd->parsed()) return run_instance_count(g, inst_o, out, err);
    if (stats_cmd->parsed()) return run_instance_stats(g, inst_o, out, err);
    if (sample_cmd->parsed()) return run_instance_sample(g, inst_o, out, err);
    if (dec_cmd->parsed()) return run_decimate(g, dec_o, out, err);
    if (walk_cmd->parsed()) return run_walk(g, walk_o, out, err);
    if (diag_cmd->parsed()) return run_energy_diagram(g, en_o, out, err);
    if (quench_cmd->parsed()) return run_energy_quench(g, en_o, out, err);
    if (land_cmd->parsed()) return run_energy_landscape(g, en_o, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  err << app.help();
  return 2;
}

int dispatch(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dispatch(args, std::cout, std::cerr);
}

}  // namespace rsm::cli
