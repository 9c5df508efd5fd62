#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include <gtest/gtest.h>

#include "qsl/rng.hpp"
#include "qsl/stats.hpp"
#include "qsl/types.hpp"

namespace qsl {
namespace {

TEST(SamplingScheme, SampleSizeAndQuantiles) {
  SamplingScheme s({0, 1, 2});
  EXPECT_EQ(s.segments(), 3);
  EXPECT_EQ(s.sample_size(), 5);
  EXPECT_EQ(s.tau(0), Rational(1, 6));
  EXPECT_EQ(s.tau(1), Rational(2, 6));
  EXPECT_EQ(s.tau(2), Rational(3, 6));
  EXPECT_EQ(s.pivot_order_statistics(), (std::vector<int>{0, 2}));
}

TEST(SamplingScheme, TausSumToOne) {
  for (const std::vector<int>& t : std::vector<std::vector<int>>{{0, 0}, {3, 1}, {0, 0, 0}, {2, 0, 5}, {1, 1, 1, 1}}) {
    SamplingScheme s(t);
    const auto taus = s.taus();
    EXPECT_EQ(std::accumulate(taus.begin(), taus.end(), Rational(0)), Rational(1)) << s.to_string();
  }
}

TEST(SamplingScheme, RejectsBadVectors) {
  EXPECT_THROW(SamplingScheme({1}), std::invalid_argument);
  EXPECT_THROW(SamplingScheme({0, -1}), std::invalid_argument);
}

TEST(AdaptivePolicy, IntervalsAreHalfOpen) {
  AdaptivePolicy p({0.0, 0.25, 1.0}, {{Method::kClassic, SamplingScheme({0, 1})},
                                      {Method::kYbb, SamplingScheme({0, 0, 0})}});
  EXPECT_EQ(p.interval_of(0.0), 0u);
  EXPECT_EQ(p.interval_of(0.2499), 0u);
  EXPECT_EQ(p.interval_of(0.25), 1u);
  EXPECT_EQ(p.interval_of(1.0), 1u);
  EXPECT_EQ(p.max_sample_size(), 2);
  EXPECT_TRUE(p.is_adaptive());
}

TEST(AdaptivePolicy, Validation) {
  const PolicySegment cl{Method::kClassic, SamplingScheme({0, 0})};
  EXPECT_THROW(AdaptivePolicy({0.0, 1.0}, {}), std::invalid_argument);
  EXPECT_THROW(AdaptivePolicy({0.0, 0.5, 1.0}, {cl}), std::invalid_argument);
  EXPECT_THROW(AdaptivePolicy({0.1, 1.0}, {cl}), std::invalid_argument);
  EXPECT_THROW(AdaptivePolicy({0.0, 0.6, 0.4, 1.0}, {cl, cl, cl}), std::invalid_argument);
  // Method arity must match the vector length.
  EXPECT_THROW(AdaptivePolicy::uniform(Method::kYbb, SamplingScheme({0, 0})), std::invalid_argument);
}

TEST(CostTally, MergeIsAddition) {
  CostTally a{1, 2, 3};
  CostTally b{10, 20, 30};
  EXPECT_EQ(a + b, (CostTally{11, 22, 33}));
  EXPECT_EQ(measure_of(a + b, Measure::kScannedElements), 22u);
}

TEST(Names, RoundTrip) {
  for (Method m : {Method::kClassic, Method::kYbb, Method::kBby, Method::kWaterloo}) {
    EXPECT_EQ(parse_method(method_name(m)), m);
  }
  for (Measure m : {Measure::kComparisons, Measure::kScannedElements, Measure::kWriteAccesses}) {
    EXPECT_EQ(parse_measure(measure_name(m)), m);
  }
  EXPECT_THROW(parse_method("dual"), std::invalid_argument);
}

TEST(Rng, BelowStaysInRange) {
  Rng rng(3);
  for (std::uint64_t bound : {1ULL, 2ULL, 7ULL, 1000ULL, (1ULL << 40) + 3}) {
    for (int i = 0; i < 1000; ++i) EXPECT_LT(rng.below(bound), bound);
  }
}

TEST(Rng, SameSeedSameStream) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.below(97), b.below(97));
}

TEST(MakeInput, IsPermutation) {
  for (std::size_t n : {1u, 2u, 17u, 1000u}) {
    auto v = make_input(n, 9);
    std::sort(v.begin(), v.end());
    for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(v[i], static_cast<Key>(i + 1));
  }
  EXPECT_THROW(make_input(0, 1), std::invalid_argument);
}

// Position of key 1 and the relative order of keys 1 and 2 must both be uniform.
TEST(MakeInput, UniformChiSquare) {
  constexpr std::size_t n = 8;
  constexpr std::uint64_t draws = 40000;
  std::vector<std::uint64_t> position(n, 0);
  std::vector<std::uint64_t> order(2, 0);
  for (std::uint64_t s = 0; s < draws; ++s) {
    const auto v = make_input(n, s);
    const auto one = std::find(v.begin(), v.end(), 1) - v.begin();
    const auto two = std::find(v.begin(), v.end(), 2) - v.begin();
    ++position[static_cast<std::size_t>(one)];
    ++order[one < two ? 0 : 1];
  }
  EXPECT_GT(chi_square_test(position, std::vector<double>(n, 1.0 / n)).p_value, 1e-3);
  EXPECT_GT(chi_square_test(order, std::vector<double>(2, 0.5)).p_value, 1e-3);
}

TEST(ResolveRank, Kinds) {
  Rng rng(1);
  EXPECT_EQ(resolve_rank(RankSpec::fixed(5), 10, rng), 5u);
  EXPECT_THROW(resolve_rank(RankSpec::fixed(11), 10, rng), std::invalid_argument);
  EXPECT_EQ(resolve_rank(RankSpec::quantile(0.5), 10, rng), 5u);
  EXPECT_EQ(resolve_rank(RankSpec::quantile(0.51), 10, rng), 6u);
  EXPECT_EQ(resolve_rank(RankSpec::quantile(0.001), 10, rng), 1u);
  EXPECT_EQ(resolve_rank(RankSpec::quantile(0.999), 10, rng), 10u);
  EXPECT_THROW(RankSpec::quantile(0.0), std::invalid_argument);
  EXPECT_THROW(RankSpec::quantile(1.0), std::invalid_argument);
  std::set<std::size_t> seen;
  for (int i = 0; i < 500; ++i) {
    const auto m = resolve_rank(RankSpec::random(), 10, rng);
    ASSERT_GE(m, 1u);
    ASSERT_LE(m, 10u);
    seen.insert(m);
  }
  EXPECT_EQ(seen.size(), 10u);
}

}  // namespace
}  // namespace qsl
