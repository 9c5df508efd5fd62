#include "qsl/types.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qsl {

std::string_view method_name(Method m) {
  switch (m) {
    case Method::kClassic: return "classic";
    case Method::kYbb: return "ybb";
    case Method::kBby: return "bby";
    case Method::kWaterloo: return "waterloo";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  if (name == "classic") return Method::kClassic;
  if (name == "ybb") return Method::kYbb;
  if (name == "bby") return Method::kBby;
  if (name == "waterloo") return Method::kWaterloo;
  throw std::invalid_argument("unknown partitioning method '" + std::string(name) + "'");
}

int method_arity(Method m) {
  switch (m) {
    case Method::kClassic: return 2;
    case Method::kYbb:
    case Method::kBby: return 3;
    case Method::kWaterloo: return 4;
  }
  return 0;
}

SamplingScheme::SamplingScheme(std::vector<int> t) : t_(std::move(t)) {
  if (t_.size() < 2) {
    throw std::invalid_argument("sampling vector needs at least two segments");
  }
  int total = 0;
  for (int v : t_) {
    if (v < 0) throw std::invalid_argument("sampling vector entries must be non-negative");
    total += v + 1;
  }
  k_ = total - 1;
}

Rational SamplingScheme::tau(int segment) const {
  return Rational(t(segment) + 1, k_ + 1);
}

std::vector<Rational> SamplingScheme::taus() const {
  std::vector<Rational> out;
  out.reserve(t_.size());
  for (int l = 0; l < segments(); ++l) out.push_back(tau(l));
  return out;
}

std::vector<int> SamplingScheme::pivot_order_statistics() const {
  std::vector<int> pos;
  int acc = -1;
  for (int l = 0; l + 1 < segments(); ++l) {
    acc += t_[static_cast<std::size_t>(l)] + 1;
    pos.push_back(acc);
  }
  return pos;
}

std::string SamplingScheme::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < t_.size(); ++i) {
    if (i) os << ',';
    os << t_[i];
  }
  os << ')';
  return os.str();
}

AdaptivePolicy::AdaptivePolicy(std::vector<double> breakpoints, std::vector<PolicySegment> segments)
    : breakpoints_(std::move(breakpoints)), segments_(std::move(segments)) {
  if (segments_.empty()) throw std::invalid_argument("policy needs at least one segment");
  if (breakpoints_.size() != segments_.size() + 1) {
    throw std::invalid_argument("policy needs exactly one more breakpoint than segments");
  }
  if (breakpoints_.front() != 0.0 || breakpoints_.back() != 1.0) {
    throw std::invalid_argument("policy breakpoints must start at 0 and end at 1");
  }
  for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
    if (!(breakpoints_[i - 1] < breakpoints_[i])) {
      throw std::invalid_argument("policy breakpoints must be strictly increasing");
    }
  }
  for (const auto& seg : segments_) {
    if (method_arity(seg.method) != seg.scheme.segments()) {
      throw std::invalid_argument("method " + std::string(method_name(seg.method)) +
                                  " cannot use sampling vector " + seg.scheme.to_string());
    }
  }
}

AdaptivePolicy AdaptivePolicy::uniform(Method method, SamplingScheme scheme) {
  return AdaptivePolicy({0.0, 1.0}, {PolicySegment{method, std::move(scheme)}});
}

std::size_t AdaptivePolicy::interval_of(double alpha) const {
  // upper_bound puts alpha == b_v into interval v + 1 (half-open intervals).
  auto it = std::upper_bound(breakpoints_.begin() + 1, breakpoints_.end() - 1, alpha);
  return static_cast<std::size_t>(it - (breakpoints_.begin() + 1));
}

int AdaptivePolicy::max_sample_size() const {
  int k = 0;
  for (const auto& seg : segments_) k = std::max(k, seg.scheme.sample_size());
  return k;
}

std::string AdaptivePolicy::to_string() const {
  std::ostringstream os;
  for (std::size_t v = 0; v < segments_.size(); ++v) {
    if (v) os << ' ';
    os << '[' << breakpoints_[v] << ',' << breakpoints_[v + 1] << (v + 1 == segments_.size() ? ']' : ')')
       << ':' << method_name(segments_[v].method) << segments_[v].scheme.to_string();
  }
  return os.str();
}

std::string_view measure_name(Measure m) {
  switch (m) {
    case Measure::kComparisons: return "C";
    case Measure::kScannedElements: return "SE";
    case Measure::kWriteAccesses: return "WA";
  }
  return "?";
}

Measure parse_measure(std::string_view name) {
  if (name == "C" || name == "comparisons") return Measure::kComparisons;
  if (name == "SE" || name == "scanned" || name == "scanned-elements") return Measure::kScannedElements;
  if (name == "WA" || name == "writes" || name == "write-accesses") return Measure::kWriteAccesses;
  throw std::invalid_argument("unknown cost measure '" + std::string(name) + "'");
}

std::uint64_t measure_of(const CostTally& tally, Measure m) {
  switch (m) {
    case Measure::kComparisons: return tally.comparisons;
    case Measure::kScannedElements: return tally.scanned_elements;
    case Measure::kWriteAccesses: return tally.write_accesses;
  }
  return 0;
}

RankSpec RankSpec::fixed(std::size_t m) {
  if (m == 0) throw std::invalid_argument("ranks are 1-based");
  return RankSpec(Kind::kFixed, m, 0.0);
}

RankSpec RankSpec::quantile(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("quantile must lie strictly between 0 and 1");
  }
  return RankSpec(Kind::kFixedQuantile, 0, alpha);
}

RankSpec RankSpec::random() { return RankSpec(Kind::kRandom, 0, 0.0); }

std::string RankSpec::to_string() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::kFixed: os << "fixed:" << m_; break;
    case Kind::kFixedQuantile: os << "quantile:" << alpha_; break;
    case Kind::kRandom: os << "random"; break;
  }
  return os.str();
}

}  // namespace qsl
