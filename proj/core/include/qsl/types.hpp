#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

namespace qsl {

/// Array keys. Inputs are permutations of 1..n, so keys are distinct.
using Key = std::int32_t;

/// Exact arithmetic for sampling quantiles and the H constant.
using Rational = boost::rational<std::int64_t>;

/// Raised when a numerical procedure fails to produce a trustworthy answer
/// (solver divergence, missing sign change in a root bracket, non-finite
/// quadrature values). Parameter validation uses std::invalid_argument.
class DiagnosticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Partitioning methods in the portfolio. YBB and BBY are mirror images:
/// YBB re-scans the leftmost segment, BBY the rightmost one.
enum class Method { kClassic, kYbb, kBby, kWaterloo };

std::string_view method_name(Method m);
Method parse_method(std::string_view name);

/// Number of segments a method produces.
int method_arity(Method m);

/// Pivot sampling for one partitioning round, given by the vector t of
/// sample elements omitted between consecutive pivots.
///
/// With s = t.size() segments the sample holds k = sum(t_l + 1) - 1
/// elements, and pivot l is the (t_1 + ... + t_l + l)-th smallest of them.
class SamplingScheme {
 public:
  explicit SamplingScheme(std::vector<int> t);

  std::span<const int> t() const { return t_; }
  int t(int segment) const { return t_.at(static_cast<std::size_t>(segment)); }
  int segments() const { return static_cast<int>(t_.size()); }
  int sample_size() const { return k_; }

  /// tau_l = (t_l + 1) / (k + 1), segment index 0-based.
  Rational tau(int segment) const;
  std::vector<Rational> taus() const;

  /// 0-based positions of the pivots within the sorted sample.
  std::vector<int> pivot_order_statistics() const;

  std::string to_string() const;

  friend bool operator==(const SamplingScheme&, const SamplingScheme&) = default;

 private:
  std::vector<int> t_;
  int k_ = 0;
};

struct PolicySegment {
  Method method;
  SamplingScheme scheme;

  friend bool operator==(const PolicySegment&, const PolicySegment&) = default;
};

/// Piecewise-constant choice of (method, sampling scheme) over the relative
/// rank alpha in [0, 1]. Interval v is [b_{v-1}, b_v); the last one is
/// closed at 1.
class AdaptivePolicy {
 public:
  AdaptivePolicy(std::vector<double> breakpoints, std::vector<PolicySegment> segments);

  static AdaptivePolicy uniform(Method method, SamplingScheme scheme);

  std::span<const double> breakpoints() const { return breakpoints_; }
  std::span<const PolicySegment> segments() const { return segments_; }
  std::size_t size() const { return segments_.size(); }

  std::size_t interval_of(double alpha) const;
  const PolicySegment& lookup(double alpha) const { return segments_[interval_of(alpha)]; }

  int max_sample_size() const;
  bool is_adaptive() const { return segments_.size() > 1; }

  std::string to_string() const;

  friend bool operator==(const AdaptivePolicy&, const AdaptivePolicy&) = default;

 private:
  std::vector<double> breakpoints_;
  std::vector<PolicySegment> segments_;
};

/// Cost counters of a run or a single round. Merging is plain addition.
struct CostTally {
  std::uint64_t comparisons = 0;
  std::uint64_t scanned_elements = 0;
  std::uint64_t write_accesses = 0;

  CostTally& operator+=(const CostTally& o) {
    comparisons += o.comparisons;
    scanned_elements += o.scanned_elements;
    write_accesses += o.write_accesses;
    return *this;
  }
  friend CostTally operator+(CostTally a, const CostTally& b) { return a += b; }
  friend bool operator==(const CostTally&, const CostTally&) = default;
};

enum class Measure { kComparisons, kScannedElements, kWriteAccesses };

std::string_view measure_name(Measure m);
Measure parse_measure(std::string_view name);
std::uint64_t measure_of(const CostTally& tally, Measure m);

/// Which rank to select: a fixed 1-based rank, a fixed quantile alpha
/// (resolved as ceil(alpha * n)) or a uniformly random rank.
class RankSpec {
 public:
  enum class Kind { kFixed, kFixedQuantile, kRandom };

  static RankSpec fixed(std::size_t m);
  static RankSpec quantile(double alpha);
  static RankSpec random();

  Kind kind() const { return kind_; }
  std::size_t rank() const { return m_; }
  double alpha() const { return alpha_; }

  std::string to_string() const;

 private:
  RankSpec(Kind kind, std::size_t m, double alpha) : kind_(kind), m_(m), alpha_(alpha) {}

  Kind kind_;
  std::size_t m_;
  double alpha_;
};

/// Result of one partitioning round on a view of n elements.
///
/// pivot_ranks holds R_0 = 0 < R_1 < ... < R_{s-1} < R_s = n + 1 (1-based
/// ranks within the view); segment_sizes holds J_l = R_l - R_{l-1} - 1.
struct PartitionOutcome {
  std::vector<std::size_t> pivot_ranks;
  std::vector<std::size_t> segment_sizes;
  CostTally tally;

  int segments() const { return static_cast<int>(segment_sizes.size()); }
};

}  // namespace qsl
