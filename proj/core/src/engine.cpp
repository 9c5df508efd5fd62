#include "qsl/engine.hpp"

#include <stdexcept>
#include <string>
#include <utility>

#include "qsl/partition.hpp"

namespace qsl {
namespace {

// Outcome of one round: either the sought key was a pivot, or the search
// continues in [offset, offset + size) of the current view with a new rank.
struct Step {
  bool found = false;
  Key key = 0;
  std::size_t offset = 0;
  std::size_t size = 0;
  std::size_t rank = 0;
};

Step descend(std::span<Key> view, const PartitionOutcome& out, std::size_t m) {
  const auto& r = out.pivot_ranks;
  for (std::size_t l = 1; l < r.size(); ++l) {
    if (l + 1 < r.size() && m == r[l]) return Step{true, view[r[l] - 1]};
    if (r[l - 1] < m && m < r[l]) {
      return Step{false, 0, r[l - 1], out.segment_sizes[l - 1], m - r[l - 1]};
    }
  }
  throw std::logic_error("sought rank not covered by partition outcome");
}

Step multiway_round(std::span<Key> view, std::size_t m, const AdaptivePolicy& policy, Rng& rng,
                    CostTally& tally) {
  const double alpha = static_cast<double>(m) / static_cast<double>(view.size());
  const PolicySegment& seg = policy.lookup(alpha);
  SampleSelection sel = sample_pivots(view, seg.scheme, layout_for(seg.method), rng);
  PartitionOutcome out = partition_with(seg.method, view, sel.pivots);
  tally += sel.tally;
  tally += out.tally;
  return descend(view, out, m);
}

// Hoare round on view[from, from + size) whose pivot sits at `from`;
// translates the outcome back to ranks within `view`.
PartitionOutcome hoare_at(std::span<Key> view, std::size_t from, std::size_t size, CostTally& tally) {
  auto part = view.subspan(from, size);
  PartitionOutcome out = hoare_partition(part, part[0]);
  tally += out.tally;
  for (std::size_t l = 0; l + 1 < out.pivot_ranks.size(); ++l) out.pivot_ranks[l] += from;
  out.pivot_ranks.back() = from + size + 1;
  return out;
}

Step waterloo_lazy_round(std::span<Key> view, std::size_t m, Rng& rng, CostTally& tally) {
  const std::size_t n = view.size();
  SampleSelection sel = sample_pivots(view, SamplingScheme({0, 0, 0, 0}), PivotLayout::kWaterloo, rng);
  tally += sel.tally;
  // p1 at 0, p2 at 1, p3 at n-1; split the middle around p2 first.
  PartitionOutcome mid = hoare_at(view, 1, n - 2, tally);
  const std::size_t r2 = mid.pivot_ranks[1];
  if (m == r2) return Step{true, view[r2 - 1]};
  if (m < r2) {
    PartitionOutcome left = hoare_at(view, 0, r2 - 1, tally);
    return descend(view.first(r2 - 1), left, m);
  }
  std::swap(view[r2], view[n - 1]);
  tally.write_accesses += 2;
  PartitionOutcome right = hoare_at(view, r2, n - r2, tally);
  Step step = descend(view, right, m);
  return step;
}

Step ybb_simulated_round(std::span<Key> view, std::size_t m, bool lazy, Rng& rng, CostTally& tally) {
  const std::size_t n = view.size();
  SampleSelection sel = sample_pivots(view, SamplingScheme({0, 0, 0}), PivotLayout::kFront, rng);
  tally += sel.tally;
  // p1 at 0, p2 at 1; split around the larger pivot first.
  PartitionOutcome big = hoare_at(view, 1, n - 1, tally);
  const std::size_t r2 = big.pivot_ranks[1];
  if (m == r2) return Step{true, view[r2 - 1]};
  if (m > r2 && lazy) return Step{false, 0, r2, n - r2, m - r2};
  PartitionOutcome small = hoare_at(view, 0, r2 - 1, tally);
  if (m > r2) return Step{false, 0, r2, n - r2, m - r2};
  return descend(view.first(r2 - 1), small, m);
}

CostTally insertion_sort(std::span<Key> v) {
  CostTally tally;
  for (std::size_t i = 1; i < v.size(); ++i) {
    const Key x = v[i];
    std::size_t j = i;
    while (j > 0) {
      ++tally.comparisons;
      if (v[j - 1] > x) {
        v[j] = v[j - 1];
        ++tally.write_accesses;
        --j;
      } else {
        break;
      }
    }
    if (j != i) {
      v[j] = x;
      ++tally.write_accesses;
    }
  }
  // Every comparison reads one cell visited by the inner index.
  tally.scanned_elements = tally.comparisons;
  return tally;
}

}  // namespace

void validate(const AlgorithmPreset& preset) {
  const auto needed = static_cast<std::size_t>(preset.policy.max_sample_size()) + 1;
  if (preset.base_case_cutoff < needed) {
    throw std::invalid_argument("base-case cutoff " + std::to_string(preset.base_case_cutoff) +
                                " is below sample size + 1 = " + std::to_string(needed));
  }
  if (preset.simulation != Simulation::kNone && preset.base_case_cutoff < 5) {
    throw std::invalid_argument("simulated rounds need a base-case cutoff of at least 5");
  }
}

SelectionResult quickselect(std::span<Key> array, std::size_t m, const AlgorithmPreset& preset, Rng& rng,
                            const SelectOptions& options) {
  if (array.empty()) throw std::invalid_argument("cannot select from an empty array");
  if (m < 1 || m > array.size()) {
    throw std::invalid_argument("rank " + std::to_string(m) + " outside [1.." + std::to_string(array.size()) +
                                "]");
  }
  validate(preset);

  SelectionResult result;
  std::span<Key> view = array;
  while (view.size() >= preset.base_case_cutoff) {
    CostTally round;
    Step step;
    switch (preset.simulation) {
      case Simulation::kNone: step = multiway_round(view, m, preset.policy, rng, round); break;
      case Simulation::kWaterlooLazy: step = waterloo_lazy_round(view, m, rng, round); break;
      case Simulation::kYbbLazy: step = ybb_simulated_round(view, m, true, rng, round); break;
      case Simulation::kYbbAtomic: step = ybb_simulated_round(view, m, false, rng, round); break;
    }
    ++result.depth;
    result.tally += round;
    if (options.record_rounds) result.rounds.push_back(round);
    if (step.found) {
      result.key = step.key;
      return result;
    }
    view = view.subspan(step.offset, step.size);
    m = step.rank;
  }
  result.base_case = insertion_sort(view);
  result.tally += result.base_case;
  result.key = view[m - 1];
  return result;
}

SelectionResult quickselect(std::span<Key> array, const RankSpec& spec, const AlgorithmPreset& preset,
                            Rng& rng, const SelectOptions& options) {
  const std::size_t m = resolve_rank(spec, array.size(), rng);
  return quickselect(array, m, preset, rng, options);
}

}  // namespace qsl
