#include "qsl/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

namespace qsl {

std::uint64_t Rng::below(std::uint64_t bound) {
  // Lemire, "Fast Random Integer Generation in an Interval" (2019).
  unsigned __int128 product = static_cast<unsigned __int128>(engine_()) * bound;
  auto low = static_cast<std::uint64_t>(product);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      product = static_cast<unsigned __int128>(engine_()) * bound;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::uint64_t>(product >> 64);
}

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void fill_permutation(std::span<Key> out, Rng& rng) {
  std::iota(out.begin(), out.end(), Key{1});
  for (std::size_t i = out.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    std::swap(out[i - 1], out[j]);
  }
}

std::vector<Key> make_input(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("input size must be positive");
  std::vector<Key> keys(n);
  Rng rng(seed);
  fill_permutation(keys, rng);
  return keys;
}

std::size_t resolve_rank(const RankSpec& spec, std::size_t n, Rng& rng) {
  if (n == 0) throw std::invalid_argument("cannot resolve a rank in an empty input");
  switch (spec.kind()) {
    case RankSpec::Kind::kFixed:
      if (spec.rank() > n) {
        throw std::invalid_argument("rank " + std::to_string(spec.rank()) + " outside [1.." +
                                    std::to_string(n) + "]");
      }
      return spec.rank();
    case RankSpec::Kind::kFixedQuantile: {
      auto m = static_cast<std::size_t>(std::ceil(spec.alpha() * static_cast<double>(n)));
      return std::clamp<std::size_t>(m, 1, n);
    }
    case RankSpec::Kind::kRandom:
      return 1 + static_cast<std::size_t>(rng.below(n));
  }
  return 1;
}

}  // namespace qsl
