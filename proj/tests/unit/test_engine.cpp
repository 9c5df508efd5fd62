#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "qsl/engine.hpp"
#include "qsl/rng.hpp"

namespace qsl {
namespace {

std::vector<std::string> all_preset_names() {
  return {"cqs",     "mok:3",   "mok:5",   "yqs",     "bby",     "waterloo",          "prop2",
          "prop2:0.3", "sqs2",  "sqs2:0.1", "sqsk:3", "sqsk:4",  "sqsk:5",            "sqsk:6",
          "sqsk:7",  "sim-waterloo-lazy", "sim-ybb-lazy", "sim-ybb-atomic"};
}

// Smallest legal cutoffs make the partitioning rounds do almost all the work.
AlgorithmPreset with_small_cutoff(AlgorithmPreset p) {
  p.base_case_cutoff = std::max<std::size_t>(5, static_cast<std::size_t>(p.policy.max_sample_size()) + 1);
  return p;
}

class PresetCorrectness : public ::testing::TestWithParam<std::string> {};

TEST_P(PresetCorrectness, MatchesSortingOracle) {
  for (const AlgorithmPreset& preset : {parse_preset(GetParam()), with_small_cutoff(parse_preset(GetParam()))}) {
    Rng rng(mix_seed(std::hash<std::string>{}(GetParam())));
    for (int trial = 0; trial < 300; ++trial) {
      const std::size_t n = 1 + rng.below(trial < 50 ? 40 : 2000);
      auto input = make_input(n, rng.next());
      auto sorted = input;
      std::sort(sorted.begin(), sorted.end());
      const std::size_t m = 1 + rng.below(n);
      const auto res = quickselect(input, m, preset, rng);
      ASSERT_EQ(res.key, sorted[m - 1]) << preset.name << " n=" << n << " m=" << m;
      ASSERT_TRUE(std::is_permutation(input.begin(), input.end(), sorted.begin()));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(AllPresets, PresetCorrectness, ::testing::ValuesIn(all_preset_names()),
                         [](const auto& info) {
                           std::string s = info.param;
                           for (char& c : s) {
                             if (c == ':' || c == '-' || c == '.') c = '_';
                           }
                           return s;
                         });

TEST(Quickselect, TallyDecomposesIntoRounds) {
  for (const char* name : {"cqs", "yqs", "waterloo", "sqs2", "sqsk:5", "sim-ybb-lazy"}) {
    const auto preset = parse_preset(name);
    Rng rng(17);
    for (int trial = 0; trial < 50; ++trial) {
      auto v = make_input(5000, rng.next());
      const auto res = quickselect(v, RankSpec::random(), preset, rng, {.record_rounds = true});
      ASSERT_EQ(res.rounds.size(), res.depth);
      CostTally sum = res.base_case;
      for (const auto& r : res.rounds) sum += r;
      EXPECT_EQ(sum, res.tally) << name;
      EXPECT_EQ(res.base_case.scanned_elements, res.base_case.comparisons);
    }
  }
}

TEST(Quickselect, DepthIsLogarithmic) {
  Rng rng(23);
  for (const char* name : {"cqs", "yqs", "waterloo", "sqs2"}) {
    const auto preset = with_small_cutoff(parse_preset(name));
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t n = 100000;
      auto v = make_input(n, rng.next());
      const auto res = quickselect(v, RankSpec::random(), preset, rng);
      EXPECT_LE(static_cast<double>(res.depth), 20.0 * std::log(static_cast<double>(n))) << name;
    }
  }
}

TEST(Quickselect, SeedReproducible) {
  const auto preset = preset_yqs();
  auto a = make_input(3000, 5);
  auto b = a;
  Rng ra(99), rb(99);
  const auto x = quickselect(a, 1234, preset, ra);
  const auto y = quickselect(b, 1234, preset, rb);
  EXPECT_EQ(x.tally, y.tally);
  EXPECT_EQ(a, b);
}

TEST(Quickselect, Errors) {
  auto v = make_input(10, 1);
  Rng rng(1);
  EXPECT_THROW(quickselect(v, 0, preset_cqs(), rng), std::invalid_argument);
  EXPECT_THROW(quickselect(v, 11, preset_cqs(), rng), std::invalid_argument);
  std::vector<Key> empty;
  EXPECT_THROW(quickselect(empty, 1, preset_cqs(), rng), std::invalid_argument);
  auto bad = preset_sqsk(7);
  bad.base_case_cutoff = 7;
  EXPECT_THROW(validate(bad), std::invalid_argument);
  auto sim = preset_simulation(Simulation::kYbbLazy);
  sim.base_case_cutoff = 4;
  EXPECT_THROW(validate(sim), std::invalid_argument);
}

Method mirror(Method m) {
  switch (m) {
    case Method::kYbb: return Method::kBby;
    case Method::kBby: return Method::kYbb;
    default: return m;
  }
}

// SQS2 keeps YBB on the whole middle interval; the larger variants switch to
// BBY at 1/2.
TEST(Presets, SesquickselectPoliciesAreMirrorSymmetric) {
  for (int k = 2; k <= 7; ++k) {
    const auto p = preset_sqsk(k);
    for (int i = 0; i < 1000; ++i) {
      const double alpha = (i + 0.37) / 1000.0;
      const auto& lo = p.policy.lookup(alpha);
      const auto& hi = p.policy.lookup(1.0 - alpha);
      std::vector<int> t(lo.scheme.t().begin(), lo.scheme.t().end());
      std::reverse(t.begin(), t.end());
      EXPECT_EQ(hi.scheme, SamplingScheme(t)) << "k=" << k << " alpha=" << alpha;
      if (k == 2) {
        EXPECT_EQ(hi.method, lo.method);
        continue;
      }
      EXPECT_EQ(hi.method, mirror(lo.method)) << "k=" << k << " alpha=" << alpha;
      if (lo.method != Method::kClassic) {
        EXPECT_EQ(lo.method, alpha < 0.5 ? Method::kYbb : Method::kBby);
      }
    }
    EXPECT_LE(p.policy.max_sample_size(), k);
  }
}

TEST(Presets, NamesRoundTrip) {
  for (const std::string& name : all_preset_names()) {
    const auto p = parse_preset(name);
    EXPECT_EQ(parse_preset(p.name).policy, p.policy) << name;
  }
  EXPECT_EQ(parse_preset("sqs2:0.5").policy, preset_prop2(0.5).policy);
  EXPECT_EQ(parse_preset("sqsk:2").policy, preset_sqs2().policy);
}

TEST(Presets, ParseErrors) {
  for (const char* bad : {"", "quick", "cqs:3", "mok", "mok:4", "mok:x", "sqsk:8", "sqs2:0", "sqs2:0.7",
                          "prop2:1", "sim-ybb-lazy:1"}) {
    EXPECT_THROW(parse_preset(bad), std::invalid_argument) << bad;
  }
}

}  // namespace
}  // namespace qsl
