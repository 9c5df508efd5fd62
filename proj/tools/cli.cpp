#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "qsl/analytic.hpp"
#include "qsl/bench.hpp"
#include "qsl/engine.hpp"
#include "qsl/policy_io.hpp"
#include "qsl/rng.hpp"
#include "qsl/solver.hpp"

namespace qsl::cli {
namespace {

struct Options {
  std::string preset = "cqs";
  std::size_t n = 0;
  std::optional<std::size_t> rank;
  std::optional<double> alpha;
  bool random_rank = false;
  std::size_t trials = 0;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::size_t grid = 0;
  double tol = 1e-9;
  std::string out;
  std::string policy;
  std::string measure = "SE";
  std::string which = "table1";
  bool verify = false;
};

class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::runtime_error("cannot open '" + path + "' for writing");
      os_ = file_.get();
    }
  }
  std::ostream& stream() { return *os_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_;
};

RankSpec rank_spec(const Options& o) {
  if (o.rank) return RankSpec::fixed(*o.rank);
  if (o.alpha) return RankSpec::quantile(*o.alpha);
  return RankSpec::random();
}

class Config {
 public:
  explicit Config(const std::string& command) { os_ << "# config: command=" << command; }
  template <class T>
  Config& add(const std::string& key, const T& value) {
    os_ << ' ' << key << '=' << value;
    return *this;
  }
  void print(std::ostream& out) const { out << os_.str() << " rng=" << Rng::kName << '\n'; }

 private:
  std::ostringstream os_;
};

// Closed-form fixed-quantile curve of a preset, when one exists.
std::optional<std::function<double(double)>> closed_form_curve(const AlgorithmPreset& preset, Measure measure) {
  const auto segments = preset.policy.segments();
  if (preset.simulation != Simulation::kNone) return std::nullopt;
  if (segments.size() == 1) {
    const PolicySegment& seg = segments[0];
    const auto a = a_coefficient(seg.method, seg.scheme, measure);
    if (!a) return std::nullopt;
    const double av = boost::rational_cast<double>(*a);
    if (seg.method == Method::kClassic && seg.scheme == SamplingScheme({0, 0})) {
      return [av](double x) { return f_cqs(x, av); };
    }
    if (seg.method == Method::kYbb && seg.scheme == SamplingScheme({0, 0, 0})) {
      return [av](double x) { return f_yqs(x, av); };
    }
    return std::nullopt;
  }
  if (measure == Measure::kWriteAccesses) return std::nullopt;
  const auto b = preset.policy.breakpoints();
  const bool sqs_shape = segments.size() == 3 && segments[0].scheme == SamplingScheme({0, 1}) &&
                         segments[1].method == Method::kYbb && segments[1].scheme == SamplingScheme({0, 0, 0}) &&
                         segments[2].scheme == SamplingScheme({1, 0}) && std::abs(b[1] + b[2] - 1.0) < 1e-15;
  const bool prop2_half = segments.size() == 2 && segments[0].scheme == SamplingScheme({0, 1}) &&
                          segments[1].scheme == SamplingScheme({1, 0}) && b[1] == 0.5;
  if (!sqs_shape && !prop2_half) return std::nullopt;
  const Sqs2Constants k = sqs2_constants(sqs_shape ? b[1] : 0.5, measure);
  return [k](double x) { return f_sqs2(x, k); };
}

PolicyConfig config_for_preset(const AlgorithmPreset& preset) {
  PolicyConfig c{preset.policy, {}, {}, {}};
  for (const auto& seg : preset.policy.segments()) {
    auto closed = [&](Measure m) -> std::optional<double> {
      const auto a = a_coefficient(seg.method, seg.scheme, m);
      if (!a) return std::nullopt;
      return boost::rational_cast<double>(*a);
    };
    c.a_comparisons.push_back(closed(Measure::kComparisons));
    c.a_scanned.push_back(closed(Measure::kScannedElements));
    c.a_writes.push_back(closed(Measure::kWriteAccesses));
  }
  return c;
}

void add_rank_options(CLI::App* cmd, Options& o) {
  auto* r = cmd->add_option("--rank", o.rank, "Fixed 1-based rank");
  auto* a = cmd->add_option("--alpha", o.alpha, "Fixed quantile in (0,1), rank ceil(alpha n)");
  auto* rr = cmd->add_flag("--random-rank", o.random_rank, "Uniformly random rank (default)");
  r->excludes(a)->excludes(rr);
  a->excludes(rr);
}

int cmd_select(const Options& o, std::ostream& out) {
  const AlgorithmPreset preset = parse_preset(o.preset);
  const RankSpec spec = rank_spec(o);
  Config("select").add("preset", preset.name).add("n", o.n).add("rank", spec.to_string()).add("seed", o.seed).print(out);
  std::vector<Key> a(o.n);
  Rng rng(trial_seed(o.seed, 0));
  fill_permutation(a, rng);
  const std::size_t m = resolve_rank(spec, o.n, rng);
  const SelectionResult r = quickselect(a, m, preset, rng);
  out << "m=" << m << " key=" << r.key << " comparisons=" << r.tally.comparisons
      << " scanned_elements=" << r.tally.scanned_elements << " write_accesses=" << r.tally.write_accesses
      << " depth=" << r.depth << '\n';
  if (r.key != static_cast<Key>(m)) throw DiagnosticError("selected key differs from the sorting oracle");
  return 0;
}

int cmd_bench(const Options& o, std::ostream& out) {
  const AlgorithmPreset preset = parse_preset(o.preset);
  const RankSpec spec = rank_spec(o);
  Config("bench")
      .add("preset", preset.name)
      .add("n", o.n)
      .add("rank", spec.to_string())
      .add("trials", o.trials)
      .add("seed", o.seed)
      .add("threads", o.threads)
      .print(out);
  const TrialStats stats = run_trials(preset, o.n, spec, o.trials, o.seed, o.threads);
  Sink sink(o.out, out);
  write_csv_header(sink.stream());
  write_csv_row(sink.stream(), stats);
  return 0;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  const AlgorithmPreset preset = parse_preset(o.preset);
  Config("sweep")
      .add("preset", preset.name)
      .add("n", o.n)
      .add("grid", o.grid)
      .add("trials", o.trials)
      .add("seed", o.seed)
      .add("threads", o.threads)
      .print(out);
  const auto points = sweep_alpha(preset, o.n, o.grid, o.trials, o.seed, o.threads);
  Sink sink(o.out, out);
  write_csv_header(sink.stream());
  for (const auto& p : points) write_csv_row(sink.stream(), p);
  return 0;
}

int cmd_solve(const Options& o, std::ostream& out) {
  const Measure measure = parse_measure(o.measure);
  std::optional<AlgorithmPreset> preset;
  PolicyConfig config = o.policy.empty() ? config_for_preset(*(preset = parse_preset(o.preset)))
                                         : load_policy_file(o.policy);
  Config cfg("solve");
  if (preset) {
    cfg.add("preset", preset->name);
  } else {
    cfg.add("policy", o.policy);
  }
  cfg.add("measure", measure_name(measure)).add("grid", o.grid).add("tol", o.tol);
  cfg.add("estimate_n", o.n).add("estimate_trials", o.trials).add("seed", o.seed).print(out);

  const CostCoefficient coeffs = resolve_coefficients(config, measure, {o.n, o.trials, o.seed});
  const SolveResult r = solve_fixed_point(config.policy, coeffs, o.grid, o.tol);
  out.precision(8);
  out << "policy=" << config.policy.to_string() << '\n';
  out << "a=";
  for (std::size_t v = 0; v < coeffs.a.size(); ++v) out << (v ? "," : "") << coeffs.a[v];
  out << '\n';
  out << "f(0)=" << r.f(0.0) << " f(1/2)=" << r.f(0.5) << " average=" << r.f.integral()
      << " iterations=" << r.iterations << " residual=" << r.residual << '\n';
  if (!o.out.empty()) curve_export(r.f, o.out);

  if (o.verify) {
    constexpr double kTolerance = 5e-3;
    std::optional<std::function<double(double)>> exact;
    if (preset) exact = closed_form_curve(*preset, measure);
    if (exact) {
      double worst = 0.0;
      for (std::size_t i = 0; i <= r.f.resolution(); ++i) {
        if (r.f.is_breakpoint(i)) continue;
        worst = std::max(worst, std::abs(r.f.values()[i] - (*exact)(r.f.alpha(i))));
      }
      out << "verify: sup-norm distance to closed form " << worst << " (tolerance " << kTolerance << ")\n";
      if (!(worst <= kTolerance)) throw DiagnosticError("solver and closed form disagree");
    } else if (!config.policy.is_adaptive()) {
      const double leading = grand_avg_leading(coeffs.a[0], config.policy.segments()[0].scheme);
      const double diff = std::abs(r.f.integral() - leading);
      out << "verify: |average - a/H| = " << diff << " (a/H = " << leading << ", tolerance " << kTolerance << ")\n";
      if (!(diff <= kTolerance)) throw DiagnosticError("solver average and a/H disagree");
    } else {
      out << "verify: no closed form for this policy\n";
    }
  }
  return 0;
}

int cmd_analytic(const Options& o, std::ostream& out) {
  const AlgorithmPreset preset = parse_preset(o.preset);
  const Measure measure = parse_measure(o.measure);
  Config cfg("analytic");
  cfg.add("preset", preset.name).add("measure", measure_name(measure));
  if (o.alpha) cfg.add("alpha", *o.alpha);
  if (!o.out.empty()) cfg.add("grid", o.grid);
  cfg.print(out);
  out.precision(10);
  out << "policy=" << preset.policy.to_string() << '\n';
  if (!preset.policy.is_adaptive() && preset.simulation == Simulation::kNone) {
    const PolicySegment& seg = preset.policy.segments()[0];
    if (const auto a = a_coefficient(seg.method, seg.scheme, measure)) {
      out << "a=" << boost::rational_cast<double>(*a) << " H=" << h_const(seg.scheme)
          << " grand_average=" << grand_avg_leading(boost::rational_cast<double>(*a), seg.scheme) << '\n';
    }
  }
  const auto curve = closed_form_curve(preset, measure);
  if (!curve) {
    out << "no closed-form fixed-quantile curve for this preset; use solve\n";
    return 0;
  }
  out << "f(0)=" << (*curve)(0.0) << " f(1/2)=" << (*curve)(0.5)
      << " average=" << grand_average_of(*curve, preset.policy.breakpoints()) << '\n';
  if (o.alpha) out << "f(" << *o.alpha << ")=" << (*curve)(*o.alpha) << '\n';
  if (!o.out.empty()) {
    curve_export(GridFunction::sample(o.grid, {}, *curve), o.out);
  }
  return 0;
}

int cmd_table(const Options& o, std::ostream& out) {
  Config("table")
      .add("which", o.which)
      .add("n", o.n)
      .add("trials", o.trials)
      .add("seed", o.seed)
      .add("threads", o.threads)
      .print(out);
  const TableReport report = table_report(o.which, o.n, o.trials, o.seed, o.threads);
  Sink sink(o.out, out);
  write_report(sink.stream(), report);
  return 0;
}

int cmd_nu_star(const Options& o, std::ostream& out) {
  const Measure measure = parse_measure(o.measure);
  Config("nu-star").add("measure", measure_name(measure)).print(out);
  const double nu = find_nu_star(measure);
  const BranchValues g = sqs2_branches(nu, measure);
  out.precision(10);
  out << "nu_star=" << nu << " g1=" << g.g1 << " g2=" << g.g2 << '\n';
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Laboratory for adaptive multiway Quickselect", "qsl"};
  app.require_subcommand(1);
  Options o;

  auto* select = app.add_subcommand("select", "Select one order statistic and print its cost tally");
  select->add_option("--preset", o.preset, "Algorithm preset")->capture_default_str();
  select->add_option("--n", o.n, "Input size (default 1000)");
  add_rank_options(select, o);
  select->add_option("--seed", o.seed, "Seed")->capture_default_str();

  auto* bench = app.add_subcommand("bench", "Monte-Carlo cost measurement (CSV)");
  bench->add_option("--preset", o.preset, "Algorithm preset")->capture_default_str();
  bench->add_option("--n", o.n, "Input size (default 100000)");
  add_rank_options(bench, o);
  bench->add_option("--trials", o.trials, "Number of trials (default 1000)");
  bench->add_option("--seed", o.seed, "Base seed")->capture_default_str();
  bench->add_option("--threads", o.threads, "Worker threads (0 = all cores)")->capture_default_str();
  bench->add_option("--out", o.out, "CSV output path (default stdout)");

  auto* sweep = app.add_subcommand("sweep", "Empirical cost curve over alpha (CSV)");
  sweep->add_option("--preset", o.preset, "Algorithm preset")->capture_default_str();
  sweep->add_option("--n", o.n, "Input size (default 100000)");
  sweep->add_option("--grid", o.grid, "Number of alpha points (default 21)");
  sweep->add_option("--trials", o.trials, "Trials per point (default 200)");
  sweep->add_option("--seed", o.seed, "Base seed")->capture_default_str();
  sweep->add_option("--threads", o.threads, "Worker threads (0 = all cores)")->capture_default_str();
  sweep->add_option("--out", o.out, "CSV output path (default stdout)");

  auto* solve = app.add_subcommand("solve", "Solve the fixed-quantile integral equation for a policy");
  auto* solve_preset = solve->add_option("--preset", o.preset, "Algorithm preset")->capture_default_str();
  solve->add_option("--policy", o.policy, "Policy JSON file")->excludes(solve_preset);
  solve->add_option("--measure", o.measure, "C, SE or WA")->capture_default_str();
  solve->add_option("--grid", o.grid, "Grid cells N (default 400)");
  solve->add_option("--tol", o.tol, "Sup-norm tolerance")->capture_default_str();
  solve->add_option("--n", o.n, "Input size for empirical coefficients (default 1000000)");
  solve->add_option("--trials", o.trials, "Trials for empirical coefficients (default 1000)");
  solve->add_option("--seed", o.seed, "Seed for empirical coefficients")->capture_default_str();
  solve->add_option("--out", o.out, "Curve CSV output path");
  solve->add_flag("--verify", o.verify, "Compare with the closed form or a/H");

  auto* analytic = app.add_subcommand("analytic", "Closed-form leading terms of a preset");
  analytic->add_option("--preset", o.preset, "Algorithm preset")->capture_default_str();
  analytic->add_option("--measure", o.measure, "C, SE or WA")->capture_default_str();
  analytic->add_option("--alpha", o.alpha, "Evaluate the curve at alpha");
  analytic->add_option("--grid", o.grid, "Grid cells for --out (default 400)");
  analytic->add_option("--out", o.out, "Curve CSV output path");

  auto* table = app.add_subcommand("table", "Reproduce a published table");
  table->add_option("--which", o.which, "table1 or table2")->capture_default_str();
  table->add_option("--n", o.n, "Input size (default 100000)");
  table->add_option("--trials", o.trials, "Trials per cell (default 500)");
  table->add_option("--seed", o.seed, "Base seed")->capture_default_str();
  table->add_option("--threads", o.threads, "Worker threads (0 = all cores)")->capture_default_str();
  table->add_option("--out", o.out, "CSV output path (default stdout)");

  auto* nu_star = app.add_subcommand("nu-star", "Optimal Sesquickselect threshold");
  nu_star->add_option("--measure", o.measure, "C or SE")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  // Subcommands share one Options value, so defaults are applied per command.
  auto fill = [](CLI::App* cmd, const char* flag, auto& field, auto value) {
    if (cmd->get_option_no_throw(flag) != nullptr && cmd->count(flag) == 0) field = value;
  };
  for (CLI::App* cmd : app.get_subcommands()) {
    const std::string name = cmd->get_name();
    const bool heavy = name == "solve";
    fill(cmd, "--n", o.n, std::size_t(name == "select" ? 1000 : heavy ? 1000000 : 100000));
    fill(cmd, "--trials", o.trials, std::size_t(name == "sweep" ? 200 : name == "table" ? 500 : 1000));
    fill(cmd, "--grid", o.grid, std::size_t(name == "sweep" ? 21 : 400));
  }

  try {
    if (*select) return cmd_select(o, out);
    if (*bench) return cmd_bench(o, out);
    if (*sweep) return cmd_sweep(o, out);
    if (*solve) return cmd_solve(o, out);
    if (*analytic) return cmd_analytic(o, out);
    if (*table) return cmd_table(o, out);
    if (*nu_star) return cmd_nu_star(o, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const DiagnosticError& e) {
    err << "diagnostic failure: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace qsl::cli
