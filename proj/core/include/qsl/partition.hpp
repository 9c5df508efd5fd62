#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qsl/rng.hpp"
#include "qsl/types.hpp"

namespace qsl {

/// Where sample_pivots leaves the chosen pivots inside the view.
enum class PivotLayout {
  kFirst,          // single pivot at view[0]
  kEnds,           // p1 at view[0], p2 at view[n-1]
  kWaterloo,       // p1 at view[0], p2 at view[1], p3 at view[n-1]
  kFront,          // p_l at view[l-1]
};

PivotLayout layout_for(Method method);

struct SampleSelection {
  std::vector<std::size_t> sample_positions;
  std::vector<Key> sorted_sample;
  std::vector<Key> pivots;
  CostTally tally;
};

/// Draws k = scheme.sample_size() positions uniformly without replacement,
/// insertion-sorts the sample and moves the pivots into `layout`.
///
/// Sample comparisons and element moves are charged to the returned tally;
/// scanned elements are not. Requires view.size() >= k (smaller views are
/// for the base case).
SampleSelection sample_pivots(std::span<Key> view, const SamplingScheme& scheme, PivotLayout layout,
                              Rng& rng);

/// Hoare–Sedgewick partitioning around `pivot` (moved to view[0] first if
/// needed). Two indices converge from the ends, so every position is
/// scanned once: comparisons and scanned elements are n + O(1), write
/// accesses are 2 per exchanged pair plus the final pivot move.
PartitionOutcome hoare_partition(std::span<Key> view, Key pivot);

/// Yaroslavskiy–Bentley–Bloch dual-pivot partitioning, p1 < p2.
///
/// Indices k and g scan the view once; the trailing index l re-scans the
/// first segment, giving n + J_1 scanned elements. Elements met by k are
/// compared to p1 first, elements met by g to p2 first.
PartitionOutcome ybb_partition(std::span<Key> view, Key p1, Key p2);

/// Mirror image of ybb_partition: re-scans the last segment instead,
/// giving n + J_3 scanned elements.
PartitionOutcome bby_partition(std::span<Key> view, Key p1, Key p2);

/// Four-way partitioning around p1 < p2 < p3 with four indices (two from
/// each end). Each non-pivot element costs exactly two comparisons (p2
/// first); the outer segments are scanned twice, so scanned elements are
/// n + J_1 + J_4.
PartitionOutcome waterloo_partition(std::span<Key> view, Key p1, Key p2, Key p3);

/// Dispatches to the partitioning routine of `method`; pivots.size() must
/// equal method_arity(method) - 1.
PartitionOutcome partition_with(Method method, std::span<Key> view, std::span<const Key> pivots);

/// BetaBinomial(n, a, b) probability of j: C(n,j) B(a+j, b+n-j) / B(a,b),
/// evaluated through log-gamma.
double betabinomial_pmf(std::size_t n, double a, double b, std::size_t j);

}  // namespace qsl
