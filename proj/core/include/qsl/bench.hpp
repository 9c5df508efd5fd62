#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qsl/engine.hpp"
#include "qsl/stats.hpp"
#include "qsl/types.hpp"

namespace qsl {

struct MeasureStats {
  double mean = 0.0;
  double stddev = 0.0;
  double std_error = 0.0;
  /// mean / n
  double normalized = 0.0;
};

struct TrialStats {
  std::string preset;
  std::size_t n = 0;
  RankSpec spec = RankSpec::random();
  std::size_t trials = 0;
  MeasureStats comparisons;
  MeasureStats scanned_elements;
  MeasureStats write_accesses;

  const MeasureStats& of(Measure m) const;
};

/// Runs `trials` independent selections. Trial i draws its input, its rank
/// (if random) and its pivots from Rng(trial_seed(seed, i)); aggregates are
/// reduced in trial order, so results do not depend on `threads`
/// (0 = hardware concurrency).
TrialStats run_trials(const AlgorithmPreset& preset, std::size_t n, const RankSpec& spec, std::size_t trials,
                      std::uint64_t seed, unsigned threads = 0);

struct SweepPoint {
  double alpha;
  std::size_t m;
  TrialStats stats;
};

/// Fixed ranks m = ceil(alpha_i n) for alpha_i = i / (grid_points - 1),
/// clipped to [1/n, 1]; point i uses seed mix_seed(seed + i).
std::vector<SweepPoint> sweep_alpha(const AlgorithmPreset& preset, std::size_t n, std::size_t grid_points,
                                    std::size_t trials_per_point, std::uint64_t seed, unsigned threads = 0);

inline constexpr const char* kCsvHeader =
    "preset,n,alpha,m,trials,comp_mean,comp_se,scan_mean,scan_se,write_mean,write_se,comp_norm,scan_norm,"
    "write_norm";

void write_csv_header(std::ostream& out);
/// Random-rank rows leave alpha and m empty.
void write_csv_row(std::ostream& out, const TrialStats& stats);
void write_csv_row(std::ostream& out, const SweepPoint& point);

struct DistributionReport {
  Method method;
  SamplingScheme scheme;
  std::size_t n;
  std::size_t rounds;
  /// One test per segment: J_l - t_l against BetaBin(n - k, t_l + 1, k - t_l).
  std::vector<ChiSquareResult> segments;

  bool passes(double significance) const;
};

/// First-round subproblem sizes over `rounds` fresh random permutations of
/// size n. Requires k < n <= 500 and rounds >= 100000.
DistributionReport subproblem_distribution_test(Method method, const SamplingScheme& scheme, std::size_t n,
                                                std::size_t rounds, std::uint64_t seed);

struct ReportRow {
  std::string row;
  std::string column;
  double published;
  /// NaN where no analytic value exists.
  double analytic;
  /// NaN for fixture-only rows.
  double empirical;
  /// (empirical - published) / published, NaN when not measured.
  double relative_error;
  std::string note;
};

struct TableReport {
  std::string which;
  std::size_t n;
  std::size_t trials;
  std::uint64_t seed;
  std::vector<ReportRow> rows;
};

/// Published values next to analytic and measured ones. "table1" covers the
/// grand averages without sampling (rows s >= 5 are fixture only); "table2"
/// the special values at alpha = 0, 1/2 and the grand average.
TableReport table_report(const std::string& which, std::size_t n, std::size_t trials, std::uint64_t seed,
                         unsigned threads = 0);

/// CSV with header row,column,published,analytic,empirical,rel_error,note.
void write_report(std::ostream& out, const TableReport& report);

}  // namespace qsl
