#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <gtest/gtest.h>

#include "qsl/analytic.hpp"
#include "qsl/policy_io.hpp"

namespace qsl {
namespace {

constexpr const char* kDoc = R"({
  "breakpoints": [0, 0.25, 0.75, 1],
  "segments": [
    {"method": "classic", "t": [0, 1], "a": {"C": 1, "SE": 1}},
    {"method": "ybb", "t": [0, 0, 0], "a": {"SE": 1.3333333333333333}},
    {"method": "classic", "t": [1, 0]}
  ]
})";

TEST(PolicyJson, Parse) {
  const auto c = parse_policy_json(kDoc);
  ASSERT_EQ(c.policy.size(), 3u);
  EXPECT_EQ(c.policy.segments()[1].method, Method::kYbb);
  EXPECT_EQ(c.policy.segments()[2].scheme, SamplingScheme({1, 0}));
  EXPECT_EQ(c.a_comparisons[0], 1.0);
  EXPECT_FALSE(c.a_comparisons[1].has_value());
  EXPECT_FALSE(c.a_scanned[2].has_value());
  EXPECT_FALSE(c.a_writes[0].has_value());
}

TEST(PolicyJson, RoundTrip) {
  const auto c = parse_policy_json(kDoc);
  const auto again = parse_policy_json(policy_to_json(c));
  EXPECT_EQ(again.policy, c.policy);
  EXPECT_EQ(again.a_comparisons, c.a_comparisons);
  EXPECT_EQ(again.a_scanned, c.a_scanned);
  EXPECT_EQ(again.a_writes, c.a_writes);
}

TEST(PolicyJson, Malformed) {
  EXPECT_THROW(parse_policy_json("{"), std::invalid_argument);
  EXPECT_THROW(parse_policy_json(R"({"segments": []})"), std::invalid_argument);
  EXPECT_THROW(parse_policy_json(R"({"breakpoints": [0, 1], "segments": [{"method": "quad", "t": [0, 0]}]})"),
               std::invalid_argument);
  EXPECT_THROW(parse_policy_json(R"({"breakpoints": [0, 1], "segments": [{"method": "classic", "t": [0, 0, 0]}]})"),
               std::invalid_argument);
  EXPECT_THROW(
      parse_policy_json(R"({"breakpoints": [0, 1], "segments": [{"method": "classic", "t": [0, 0], "a": {"C": "x"}}]})"),
      std::invalid_argument);
  EXPECT_THROW(load_policy_file("/nonexistent/policy.json"), std::invalid_argument);
}

TEST(PolicyJson, LoadFromFile) {
  const auto path = std::filesystem::temp_directory_path() / "qsl_policy_io_test.json";
  {
    std::ofstream out(path);
    out << kDoc;
  }
  EXPECT_EQ(load_policy_file(path.string()).policy, parse_policy_json(kDoc).policy);
  std::filesystem::remove(path);
}

TEST(ResolveCoefficients, GivenValuesAndEstimates) {
  const auto c = parse_policy_json(kDoc);
  const auto se = resolve_coefficients(c, Measure::kScannedElements, {20000, 1000, 3});
  ASSERT_EQ(se.a.size(), 3u);
  EXPECT_DOUBLE_EQ(se.a[0], 1.0);
  EXPECT_DOUBLE_EQ(se.a[1], 4.0 / 3.0);
  EXPECT_NEAR(se.a[2], 1.0, 0.02);
  const auto again = resolve_coefficients(c, Measure::kScannedElements, {20000, 1000, 3});
  EXPECT_EQ(se.a, again.a);
}

}  // namespace
}  // namespace qsl
