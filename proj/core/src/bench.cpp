#include "qsl/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "qsl/analytic.hpp"
#include "qsl/partition.hpp"
#include "qsl/rng.hpp"

namespace qsl {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr failure;
  auto worker = [&] {
    for (std::size_t i = next++; i < count && !failed; i = next++) {
      try {
        fn(i);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

MeasureStats summarize(const std::vector<double>& xs, std::size_t n) {
  MeasureStats s;
  const auto t = static_cast<double>(xs.size());
  s.mean = pairwise_sum(xs) / t;
  if (xs.size() > 1) {
    std::vector<double> sq(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) sq[i] = (xs[i] - s.mean) * (xs[i] - s.mean);
    s.stddev = std::sqrt(pairwise_sum(sq) / (t - 1.0));
  }
  s.std_error = s.stddev / std::sqrt(t);
  s.normalized = s.mean / static_cast<double>(n);
  return s;
}

void write_row(std::ostream& out, const TrialStats& s, std::optional<double> alpha, std::optional<std::size_t> m) {
  const auto old = out.precision(10);
  out << s.preset << ',' << s.n << ',';
  if (alpha) out << *alpha;
  out << ',';
  if (m) out << *m;
  out << ',' << s.trials;
  for (const MeasureStats* ms : {&s.comparisons, &s.scanned_elements, &s.write_accesses}) {
    out << ',' << ms->mean << ',' << ms->std_error;
  }
  out << ',' << s.comparisons.normalized << ',' << s.scanned_elements.normalized << ','
      << s.write_accesses.normalized << '\n';
  out.precision(old);
}

}  // namespace

const MeasureStats& TrialStats::of(Measure m) const {
  switch (m) {
    case Measure::kComparisons: return comparisons;
    case Measure::kScannedElements: return scanned_elements;
    case Measure::kWriteAccesses: return write_accesses;
  }
  throw std::logic_error("unreachable");
}

TrialStats run_trials(const AlgorithmPreset& preset, std::size_t n, const RankSpec& spec, std::size_t trials,
                      std::uint64_t seed, unsigned threads) {
  if (trials < 1) throw std::invalid_argument("need at least one trial");
  if (n < 1) throw std::invalid_argument("need n >= 1");
  validate(preset);
  std::vector<double> c(trials);
  std::vector<double> se(trials);
  std::vector<double> wa(trials);
  parallel_for(trials, threads, [&](std::size_t i) {
    thread_local std::vector<Key> buf;
    buf.resize(n);
    Rng rng(trial_seed(seed, i));
    fill_permutation(buf, rng);
    const std::size_t m = resolve_rank(spec, n, rng);
    const SelectionResult r = quickselect(buf, m, preset, rng);
    c[i] = static_cast<double>(r.tally.comparisons);
    se[i] = static_cast<double>(r.tally.scanned_elements);
    wa[i] = static_cast<double>(r.tally.write_accesses);
  });
  TrialStats s;
  s.preset = preset.name;
  s.n = n;
  s.spec = spec;
  s.trials = trials;
  s.comparisons = summarize(c, n);
  s.scanned_elements = summarize(se, n);
  s.write_accesses = summarize(wa, n);
  return s;
}

std::vector<SweepPoint> sweep_alpha(const AlgorithmPreset& preset, std::size_t n, std::size_t grid_points,
                                    std::size_t trials_per_point, std::uint64_t seed, unsigned threads) {
  if (grid_points < 2) throw std::invalid_argument("a sweep needs at least two grid points");
  std::vector<SweepPoint> out;
  for (std::size_t i = 0; i < grid_points; ++i) {
    double alpha = static_cast<double>(i) / static_cast<double>(grid_points - 1);
    alpha = std::clamp(alpha, 1.0 / static_cast<double>(n), 1.0);
    const auto m = std::clamp<std::size_t>(static_cast<std::size_t>(std::ceil(alpha * static_cast<double>(n))), 1, n);
    out.push_back({alpha, m,
                   run_trials(preset, n, RankSpec::fixed(m), trials_per_point, mix_seed(seed + i), threads)});
  }
  return out;
}

void write_csv_header(std::ostream& out) { out << kCsvHeader << '\n'; }

void write_csv_row(std::ostream& out, const TrialStats& s) {
  switch (s.spec.kind()) {
    case RankSpec::Kind::kRandom: write_row(out, s, std::nullopt, std::nullopt); break;
    case RankSpec::Kind::kFixed:
      write_row(out, s, static_cast<double>(s.spec.rank()) / static_cast<double>(s.n), s.spec.rank());
      break;
    case RankSpec::Kind::kFixedQuantile: {
      Rng unused(0);
      write_row(out, s, s.spec.alpha(), resolve_rank(s.spec, s.n, unused));
      break;
    }
  }
}

void write_csv_row(std::ostream& out, const SweepPoint& p) { write_row(out, p.stats, p.alpha, p.m); }

bool DistributionReport::passes(double significance) const {
  return std::all_of(segments.begin(), segments.end(),
                     [significance](const ChiSquareResult& r) { return r.p_value > significance; });
}

DistributionReport subproblem_distribution_test(Method method, const SamplingScheme& scheme, std::size_t n,
                                                std::size_t rounds, std::uint64_t seed) {
  const auto k = static_cast<std::size_t>(scheme.sample_size());
  if (n <= k || n > 500) throw std::invalid_argument("distribution test needs k < n <= 500");
  if (rounds < 100000) throw std::invalid_argument("distribution test needs at least 1e5 rounds");
  if (method_arity(method) != scheme.segments()) {
    throw std::invalid_argument("method " + std::string(method_name(method)) + " cannot use sampling vector " +
                                scheme.to_string());
  }
  const auto s = static_cast<std::size_t>(scheme.segments());
  const std::size_t support = n - k + 1;
  std::vector<std::vector<std::uint64_t>> counts(s, std::vector<std::uint64_t>(support, 0));
  std::vector<Key> buf(n);
  Rng rng(seed);
  for (std::size_t r = 0; r < rounds; ++r) {
    fill_permutation(buf, rng);
    SampleSelection sel = sample_pivots(buf, scheme, layout_for(method), rng);
    PartitionOutcome out = partition_with(method, buf, sel.pivots);
    for (std::size_t l = 0; l < s; ++l) {
      const std::size_t i = out.segment_sizes[l] - static_cast<std::size_t>(scheme.t(static_cast<int>(l)));
      ++counts[l][i];
    }
  }
  DistributionReport report{method, scheme, n, rounds, {}};
  for (std::size_t l = 0; l < s; ++l) {
    const int t = scheme.t(static_cast<int>(l));
    std::vector<double> p(support);
    for (std::size_t j = 0; j < support; ++j) {
      p[j] = betabinomial_pmf(n - k, t + 1.0, static_cast<double>(static_cast<int>(k) - t), j);
    }
    report.segments.push_back(chi_square_test(counts[l], p));
  }
  return report;
}

TableReport table_report(const std::string& which, std::size_t n, std::size_t trials, std::uint64_t seed,
                         unsigned threads) {
  TableReport report{which, n, trials, seed, {}};
  auto rel = [](double empirical, double published) { return (empirical - published) / published; };
  std::uint64_t stream = 0;

  if (which == "table1") {
    const AlgorithmPreset presets[] = {preset_cqs(), preset_yqs(), preset_waterloo()};
    const Method methods[] = {Method::kClassic, Method::kYbb, Method::kWaterloo};
    const Measure measures[] = {Measure::kComparisons, Measure::kScannedElements, Measure::kWriteAccesses};
    for (const Table1Row& row : table1_fixture()) {
      const double published[] = {row.comparisons, row.scanned_elements, row.write_accesses};
      const std::string label = "s=" + std::to_string(row.s) + (row.name.empty() ? "" : " " + row.name);
      if (row.fixture_only) {
        for (int c = 0; c < 3; ++c) {
          report.rows.push_back({label, std::string(measure_name(measures[c])), published[c], kNaN, kNaN, kNaN,
                                 "fixture only"});
        }
        continue;
      }
      const auto idx = static_cast<std::size_t>(row.s - 2);
      const SamplingScheme plain(std::vector<int>(static_cast<std::size_t>(row.s), 0));
      const TrialStats st =
          run_trials(presets[idx], n, RankSpec::random(), trials, mix_seed(seed + stream++), threads);
      for (int c = 0; c < 3; ++c) {
        const auto a = a_coefficient(methods[idx], plain, measures[c]);
        const double analytic = a ? grand_avg_leading(boost::rational_cast<double>(*a), plain) : kNaN;
        const double emp = st.of(measures[c]).normalized;
        std::string note;
        if (methods[idx] == Method::kWaterloo && measures[c] == Measure::kWriteAccesses) {
          note = "write accesses depend on the partitioning scheme";
        }
        report.rows.push_back({label, std::string(measure_name(measures[c])), published[c], analytic, emp,
                               rel(emp, published[c]), note});
      }
    }
    return report;
  }

  if (which == "table2") {
    const double nu_star = find_nu_star(Measure::kScannedElements);
    for (const Table2Column& col : table2_fixture()) {
      AlgorithmPreset preset = col.variant == "PROP2" ? preset_prop2(0.5)
                               : col.variant == "YQS" ? preset_yqs()
                                                      : preset_sqs2(nu_star);
      std::function<double(double)> f;
      double average = 0.0;
      if (col.variant == "YQS") {
        const double a = boost::rational_cast<double>(
            *a_coefficient(Method::kYbb, SamplingScheme({0, 0, 0}), col.measure));
        f = [a](double x) { return f_yqs(x, a); };
        average = grand_average_of(f);
      } else {
        const Sqs2Constants k = sqs2_constants(col.variant == "PROP2" ? 0.5 : nu_star, col.measure);
        f = [k](double x) { return f_sqs2(x, k); };
        average = sqs2_grand_average(k);
      }
      const std::string column = col.variant + " " + std::string(measure_name(col.measure));
      struct Point {
        const char* label;
        RankSpec spec;
        double published;
        double analytic;
        bool truncated;
      };
      const Point points[] = {{"alpha=0", RankSpec::fixed(1), col.at_zero, f(0.0), false},
                              {"alpha=1/2", RankSpec::quantile(0.5), col.at_half, f(0.5), col.truncated_half},
                              {"average", RankSpec::random(), col.average, average, col.truncated_average}};
      for (const Point& p : points) {
        const TrialStats st = run_trials(preset, n, p.spec, trials, mix_seed(seed + stream++), threads);
        const double emp = st.of(col.measure).normalized;
        report.rows.push_back({p.label, column, p.published, p.analytic, emp, rel(emp, p.published),
                               p.truncated ? "published value truncated" : ""});
      }
    }
    return report;
  }
  throw std::invalid_argument("unknown table '" + which + "' (expected table1 or table2)");
}

void write_report(std::ostream& out, const TableReport& report) {
  const auto old = out.precision(6);
  out << "row,column,published,analytic,empirical,rel_error,note\n";
  auto num = [&out](double x) {
    if (!std::isnan(x)) out << x;
  };
  for (const ReportRow& r : report.rows) {
    out << r.row << ',' << r.column << ',';
    num(r.published);
    out << ',';
    num(r.analytic);
    out << ',';
    num(r.empirical);
    out << ',';
    num(r.relative_error);
    out << ',' << r.note << '\n';
  }
  out.precision(old);
}

}  // namespace qsl
