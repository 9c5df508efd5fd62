#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qsl/solver.hpp"
#include "qsl/types.hpp"

namespace qsl {

/// Policy read from a JSON document of the form
///   {"breakpoints": [0, 0.3, 1],
///    "segments": [{"method": "classic", "t": [0, 1], "a": {"C": 1, "SE": 1}}, ...]}
/// The "a" object and each of its entries are optional.
struct PolicyConfig {
  AdaptivePolicy policy;
  /// Per segment, indexed by Measure.
  std::vector<std::optional<double>> a_comparisons;
  std::vector<std::optional<double>> a_scanned;
  std::vector<std::optional<double>> a_writes;
};

/// Throws std::invalid_argument on malformed documents.
PolicyConfig parse_policy_json(const std::string& text);
PolicyConfig load_policy_file(const std::string& path);
std::string policy_to_json(const PolicyConfig& config);

struct EstimationSettings {
  std::size_t n = 1000000;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
};

/// Coefficients for `measure`: configured values where given, otherwise
/// estimate_a_empirical with the settings (one stream per segment).
CostCoefficient resolve_coefficients(const PolicyConfig& config, Measure measure,
                                     const EstimationSettings& settings = {});

}  // namespace qsl
