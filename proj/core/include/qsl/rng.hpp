#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "qsl/types.hpp"

namespace qsl {

/// Seedable generator used for every random decision in the library.
///
/// Bounded draws use Lemire's multiply-shift rejection method on top of
/// mt19937_64, so the stream of values is identical across standard
/// libraries (std::uniform_int_distribution is not).
class Rng {
 public:
  static constexpr std::string_view kName = "mt19937_64+lemire/v1";

  explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  /// Uniform double in [0, 1).
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::uint64_t seed() const { return seed_; }

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
};

/// Per-trial stream seed; serial and parallel runs derive the same streams.
constexpr std::uint64_t trial_seed(std::uint64_t base, std::uint64_t trial) { return base ^ trial; }

/// SplitMix64 finalizer, used to derive well-separated seeds for sweep points.
std::uint64_t mix_seed(std::uint64_t x);

/// Overwrites out with a uniformly random permutation of 1..out.size().
void fill_permutation(std::span<Key> out, Rng& rng);

/// Uniformly random permutation of 1..n reproducible from seed.
std::vector<Key> make_input(std::size_t n, std::uint64_t seed);

/// Resolves a rank spec against n: fixed ranks pass through, quantiles map
/// to ceil(alpha * n), random ranks are drawn uniformly from [1..n].
std::size_t resolve_rank(const RankSpec& spec, std::size_t n, Rng& rng);

}  // namespace qsl
