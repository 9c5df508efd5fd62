#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qsl/analytic.hpp"
#include "qsl/engine.hpp"

namespace qsl {
namespace {

constexpr std::size_t kDefaultCutoff = 32;

AlgorithmPreset make(std::string name, AdaptivePolicy policy) {
  AlgorithmPreset p{std::move(name), std::move(policy)};
  p.base_case_cutoff = std::max(kDefaultCutoff, static_cast<std::size_t>(p.policy.max_sample_size()) + 1);
  return p;
}

std::string format_number(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

double parse_number(const std::string& text, const std::string& preset) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw std::invalid_argument("bad numeric parameter '" + text + "' in preset '" + preset + "'");
  }
  return value;
}

int parse_int(const std::string& text, const std::string& preset) {
  const double v = parse_number(text, preset);
  if (v != static_cast<int>(v)) throw std::invalid_argument("preset '" + preset + "' needs an integer parameter");
  return static_cast<int>(v);
}

struct Piece {
  double upper;
  std::vector<int> t;
};

// Builds a symmetric SQSk policy from the pieces covering [0, 1/2]. Two-entry
// vectors use classic partitioning; three-entry vectors use YBB below 1/2 and
// the mirrored vector with BBY above.
AdaptivePolicy symmetric_policy(const std::vector<Piece>& lower_half) {
  std::vector<double> breaks{0.0};
  std::vector<PolicySegment> segs;
  for (const auto& piece : lower_half) {
    breaks.push_back(piece.upper);
    segs.push_back({piece.t.size() == 2 ? Method::kClassic : Method::kYbb, SamplingScheme(piece.t)});
  }
  for (auto it = lower_half.rbegin(); it != lower_half.rend(); ++it) {
    std::vector<int> mirrored(it->t.rbegin(), it->t.rend());
    segs.push_back({mirrored.size() == 2 ? Method::kClassic : Method::kBby, SamplingScheme(mirrored)});
    auto next = std::next(it);
    breaks.push_back(next == lower_half.rend() ? 1.0 : 1.0 - next->upper);
  }
  return AdaptivePolicy(std::move(breaks), std::move(segs));
}

const std::vector<Piece>& sqsk_table(int k) {
  static const std::vector<std::vector<Piece>> tables = {
      {{0.1035, {0, 2}}, {0.5, {0, 0, 1}}},
      {{0.06, {0, 3}}, {0.28, {0, 0, 2}}, {0.5, {0, 1, 1}}},
      {{0.036, {0, 4}}, {0.153, {0, 0, 3}}, {0.5, {0, 1, 2}}},
      {{0.025, {0, 5}}, {0.09, {0, 0, 4}}, {0.38, {0, 1, 3}}, {0.5, {1, 1, 2}}},
      {{0.02, {0, 6}}, {0.06, {0, 0, 5}}, {0.2875, {0, 1, 4}}, {0.465, {1, 1, 3}}, {0.5, {1, 2, 2}}},
  };
  return tables.at(static_cast<std::size_t>(k - 3));
}

}  // namespace

AlgorithmPreset preset_cqs() { return make("cqs", AdaptivePolicy::uniform(Method::kClassic, SamplingScheme({0, 0}))); }

AlgorithmPreset preset_mok(int k) {
  if (k < 1 || k % 2 == 0) throw std::invalid_argument("median-of-k needs an odd k >= 1");
  const int t = (k - 1) / 2;
  return make("mok:" + std::to_string(k), AdaptivePolicy::uniform(Method::kClassic, SamplingScheme({t, t})));
}

AlgorithmPreset preset_yqs() { return make("yqs", AdaptivePolicy::uniform(Method::kYbb, SamplingScheme({0, 0, 0}))); }

AlgorithmPreset preset_bby() { return make("bby", AdaptivePolicy::uniform(Method::kBby, SamplingScheme({0, 0, 0}))); }

AlgorithmPreset preset_waterloo() {
  return make("waterloo", AdaptivePolicy::uniform(Method::kWaterloo, SamplingScheme({0, 0, 0, 0})));
}

AlgorithmPreset preset_prop2(double cutoff) {
  if (!(cutoff > 0.0 && cutoff < 1.0)) throw std::invalid_argument("PROP2 cutoff must lie in (0, 1)");
  AdaptivePolicy policy({0.0, cutoff, 1.0}, {{Method::kClassic, SamplingScheme({0, 1})},
                                              {Method::kClassic, SamplingScheme({1, 0})}});
  return make("prop2:" + format_number(cutoff), std::move(policy));
}

AlgorithmPreset preset_sqs2(double nu) {
  if (!(nu > 0.0 && nu <= 0.5)) throw std::invalid_argument("Sesquickselect threshold must lie in (0, 1/2]");
  const std::string name = "sqs2:" + format_number(nu);
  if (nu == 0.5) return AlgorithmPreset{name, preset_prop2(0.5).policy, kDefaultCutoff};
  AdaptivePolicy policy({0.0, nu, 1.0 - nu, 1.0}, {{Method::kClassic, SamplingScheme({0, 1})},
                                                    {Method::kYbb, SamplingScheme({0, 0, 0})},
                                                    {Method::kClassic, SamplingScheme({1, 0})}});
  return make(name, std::move(policy));
}

AlgorithmPreset preset_sqs2() {
  static const double nu_star = find_nu_star(Measure::kScannedElements);
  AlgorithmPreset p = preset_sqs2(nu_star);
  p.name = "sqs2";
  return p;
}

AlgorithmPreset preset_sqsk(int k) {
  if (k == 2) return preset_sqs2();
  if (k < 3 || k > 7) throw std::invalid_argument("SQSk presets exist for k = 2..7");
  return make("sqsk:" + std::to_string(k), symmetric_policy(sqsk_table(k)));
}

AlgorithmPreset preset_simulation(Simulation variant) {
  auto build = [variant](const char* name, Method method, std::vector<int> t) {
    AlgorithmPreset p = make(name, AdaptivePolicy::uniform(method, SamplingScheme(std::move(t))));
    p.simulation = variant;
    return p;
  };
  switch (variant) {
    case Simulation::kWaterlooLazy: return build("sim-waterloo-lazy", Method::kWaterloo, {0, 0, 0, 0});
    case Simulation::kYbbLazy: return build("sim-ybb-lazy", Method::kYbb, {0, 0, 0});
    case Simulation::kYbbAtomic: return build("sim-ybb-atomic", Method::kYbb, {0, 0, 0});
    case Simulation::kNone: break;
  }
  throw std::invalid_argument("not a simulation variant");
}

AlgorithmPreset preset_from_policy(std::string name, AdaptivePolicy policy) {
  return make(std::move(name), std::move(policy));
}

AlgorithmPreset parse_preset(const std::string& name) {
  const auto colon = name.find(':');
  const std::string head = name.substr(0, colon);
  const bool has_arg = colon != std::string::npos;
  const std::string arg = has_arg ? name.substr(colon + 1) : std::string();
  auto no_arg = [&] {
    if (has_arg) throw std::invalid_argument("preset '" + head + "' takes no parameter");
  };
  auto need_arg = [&] {
    if (!has_arg) throw std::invalid_argument("preset '" + head + "' needs a parameter, e.g. " + head + ":3");
  };

  if (head == "cqs") return no_arg(), preset_cqs();
  if (head == "yqs") return no_arg(), preset_yqs();
  if (head == "bby") return no_arg(), preset_bby();
  if (head == "waterloo") return no_arg(), preset_waterloo();
  if (head == "sim-waterloo-lazy") return no_arg(), preset_simulation(Simulation::kWaterlooLazy);
  if (head == "sim-ybb-lazy") return no_arg(), preset_simulation(Simulation::kYbbLazy);
  if (head == "sim-ybb-atomic") return no_arg(), preset_simulation(Simulation::kYbbAtomic);
  if (head == "mok") return need_arg(), preset_mok(parse_int(arg, name));
  if (head == "sqsk") return need_arg(), preset_sqsk(parse_int(arg, name));
  if (head == "prop2") return has_arg ? preset_prop2(parse_number(arg, name)) : preset_prop2();
  if (head == "sqs2") return has_arg ? preset_sqs2(parse_number(arg, name)) : preset_sqs2();
  throw std::invalid_argument("unknown preset '" + name + "'");
}

}  // namespace qsl
