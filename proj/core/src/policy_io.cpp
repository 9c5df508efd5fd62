#include "qsl/policy_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "qsl/rng.hpp"

namespace qsl {
namespace {

using nlohmann::json;

std::optional<double> optional_number(const json& a, const char* key) {
  if (!a.contains(key)) return std::nullopt;
  const json& v = a.at(key);
  if (!v.is_number()) throw std::invalid_argument(std::string("coefficient '") + key + "' must be a number");
  return v.get<double>();
}

const std::vector<std::optional<double>>& slot(const PolicyConfig& c, Measure m) {
  switch (m) {
    case Measure::kComparisons: return c.a_comparisons;
    case Measure::kScannedElements: return c.a_scanned;
    case Measure::kWriteAccesses: return c.a_writes;
  }
  throw std::logic_error("unreachable");
}

}  // namespace

PolicyConfig parse_policy_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("policy config is not valid JSON: ") + e.what());
  }
  try {
    std::vector<double> breaks = doc.at("breakpoints").get<std::vector<double>>();
    std::vector<PolicySegment> segs;
    std::vector<std::optional<double>> ac, ase, awa;
    for (const json& seg : doc.at("segments")) {
      segs.push_back({parse_method(seg.at("method").get<std::string>()),
                      SamplingScheme(seg.at("t").get<std::vector<int>>())});
      const json a = seg.value("a", json::object());
      ac.push_back(optional_number(a, "C"));
      ase.push_back(optional_number(a, "SE"));
      awa.push_back(optional_number(a, "WA"));
    }
    return PolicyConfig{AdaptivePolicy(std::move(breaks), std::move(segs)), ac, ase, awa};
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed policy config: ") + e.what());
  }
}

PolicyConfig load_policy_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read policy file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return parse_policy_json(os.str());
}

std::string policy_to_json(const PolicyConfig& config) {
  json doc;
  doc["breakpoints"] = std::vector<double>(config.policy.breakpoints().begin(), config.policy.breakpoints().end());
  json segs = json::array();
  const auto segments = config.policy.segments();
  for (std::size_t v = 0; v < segments.size(); ++v) {
    json seg;
    seg["method"] = std::string(method_name(segments[v].method));
    seg["t"] = std::vector<int>(segments[v].scheme.t().begin(), segments[v].scheme.t().end());
    json a = json::object();
    for (Measure m : {Measure::kComparisons, Measure::kScannedElements, Measure::kWriteAccesses}) {
      const auto& values = slot(config, m);
      if (v < values.size() && values[v]) a[std::string(measure_name(m))] = *values[v];
    }
    if (!a.empty()) seg["a"] = a;
    segs.push_back(seg);
  }
  doc["segments"] = segs;
  return doc.dump(2);
}

CostCoefficient resolve_coefficients(const PolicyConfig& config, Measure measure, const EstimationSettings& settings) {
  CostCoefficient c;
  const auto& given = slot(config, measure);
  const auto segments = config.policy.segments();
  for (std::size_t v = 0; v < segments.size(); ++v) {
    if (v < given.size() && given[v]) {
      c.a.push_back(*given[v]);
      continue;
    }
    Rng rng(mix_seed(settings.seed + v));
    c.a.push_back(
        estimate_a_empirical(segments[v].method, segments[v].scheme, measure, settings.n, settings.trials, rng).mean);
  }
  return c;
}

}  // namespace qsl
