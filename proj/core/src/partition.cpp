#include "qsl/partition.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

namespace qsl {
namespace {

using Index = std::ptrdiff_t;

void exchange(std::span<Key> v, std::size_t i, std::size_t j, CostTally& tally) {
  if (i == j) return;
  std::swap(v[i], v[j]);
  tally.write_accesses += 2;
}

// Moves `value` to position `target`, searching the view if needed.
void ensure_at(std::span<Key> v, std::size_t target, Key value, CostTally& tally) {
  if (v[target] == value) return;
  auto it = std::find(v.begin(), v.end(), value);
  if (it == v.end()) {
    throw std::invalid_argument("pivot " + std::to_string(value) + " is not present in the view");
  }
  exchange(v, target, static_cast<std::size_t>(it - v.begin()), tally);
}

// Yaroslavskiy's loop on a logical view: at(i) maps logical to physical
// cells and less() is the logical order. Logical layout: small pivot at 0,
// large pivot at n-1. Returns the final logical pivot positions.
template <class At, class Less>
std::pair<Index, Index> ybb_core(At at, Index n, Less less, CostTally& tally) {
  const Key p = at(0);
  const Key q = at(n - 1);
  Index l = 1;
  Index k = 1;
  Index g = n - 2;
  while (k <= g) {
    ++tally.comparisons;
    if (less(at(k), p)) {
      if (k != l) std::swap(at(k), at(l));
      tally.write_accesses += 2;
      ++l;
    } else {
      ++tally.comparisons;
      if (less(q, at(k))) {
        for (;;) {
          ++tally.comparisons;
          if (less(q, at(g)) && k < g) {
            --g;
          } else {
            break;
          }
        }
        ++tally.comparisons;
        if (less(p, at(g))) {
          if (k != g) std::swap(at(k), at(g));
          tally.write_accesses += 2;
        } else {
          // at(l) <- small from g, at(k) <- old at(l), at(g) <- large from k
          const Key large = at(k);
          at(k) = at(l);
          at(l) = at(g);
          at(g) = large;
          tally.write_accesses += 3;
          ++l;
        }
        --g;
      }
    }
    ++k;
  }
  tally.scanned_elements += static_cast<std::uint64_t>((k - 1) + (n - 2 - g) + (l - 1));
  --l;
  ++g;
  if (l != 0) {
    std::swap(at(0), at(l));
    tally.write_accesses += 2;
  }
  if (g != n - 1) {
    std::swap(at(n - 1), at(g));
    tally.write_accesses += 2;
  }
  return {l, g};
}

PartitionOutcome three_way_outcome(std::size_t n, std::size_t r1, std::size_t r2, CostTally tally) {
  PartitionOutcome out;
  out.pivot_ranks = {0, r1, r2, n + 1};
  out.segment_sizes = {r1 - 1, r2 - r1 - 1, n - r2};
  out.tally = tally;
  return out;
}

void check_dual(std::span<Key> view, Key p1, Key p2) {
  if (view.size() < 2) throw std::invalid_argument("dual-pivot partitioning needs two elements");
  if (!(p1 < p2)) throw std::invalid_argument("dual-pivot partitioning needs p1 < p2");
}

}  // namespace

PivotLayout layout_for(Method method) {
  switch (method) {
    case Method::kClassic: return PivotLayout::kFirst;
    case Method::kYbb:
    case Method::kBby: return PivotLayout::kEnds;
    case Method::kWaterloo: return PivotLayout::kWaterloo;
  }
  return PivotLayout::kFront;
}

SampleSelection sample_pivots(std::span<Key> view, const SamplingScheme& scheme, PivotLayout layout,
                              Rng& rng) {
  const std::size_t n = view.size();
  const auto k = static_cast<std::size_t>(scheme.sample_size());
  if (n < k) {
    throw std::invalid_argument("view of size " + std::to_string(n) + " is smaller than the sample (" +
                                std::to_string(k) + "); use the base case");
  }
  SampleSelection sel;
  sel.sample_positions.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
    sel.sample_positions.push_back(j);
    exchange(view, i, j, sel.tally);
  }
  for (std::size_t i = 1; i < k; ++i) {
    const Key x = view[i];
    std::size_t j = i;
    while (j > 0) {
      ++sel.tally.comparisons;
      if (view[j - 1] > x) {
        view[j] = view[j - 1];
        ++sel.tally.write_accesses;
        --j;
      } else {
        break;
      }
    }
    if (j != i) {
      view[j] = x;
      ++sel.tally.write_accesses;
    }
  }
  sel.sorted_sample.assign(view.begin(), view.begin() + static_cast<Index>(k));

  const auto order = scheme.pivot_order_statistics();
  for (int c : order) sel.pivots.push_back(view[static_cast<std::size_t>(c)]);

  // Left targets never exceed the pivot's sorted position, so placing the
  // pivots left to right never disturbs one that is still to be moved.
  auto to = [&](std::size_t target, std::size_t pivot) {
    exchange(view, target, static_cast<std::size_t>(order[pivot]), sel.tally);
  };
  switch (layout) {
    case PivotLayout::kFirst:
      to(0, 0);
      break;
    case PivotLayout::kEnds:
      to(0, 0);
      to(n - 1, order.size() - 1);
      break;
    case PivotLayout::kWaterloo:
      to(0, 0);
      to(1, 1);
      to(n - 1, 2);
      break;
    case PivotLayout::kFront:
      for (std::size_t l = 0; l < order.size(); ++l) to(l, l);
      break;
  }
  return sel;
}

PartitionOutcome hoare_partition(std::span<Key> view, Key pivot) {
  PartitionOutcome out;
  const std::size_t n = view.size();
  if (n == 0) {
    out.pivot_ranks = {0, 1};
    out.segment_sizes = {0, 0};
    return out;
  }
  CostTally& tally = out.tally;
  ensure_at(view, 0, pivot, tally);

  std::size_t i = 0;
  std::size_t j = n;
  for (;;) {
    while (++i < n) {
      ++tally.comparisons;
      if (view[i] > pivot) break;
    }
    // view[0] holds the pivot and stops j.
    do {
      --j;
      ++tally.comparisons;
    } while (view[j] > pivot);
    if (i >= j) break;
    std::swap(view[i], view[j]);
    tally.write_accesses += 2;
  }
  exchange(view, 0, j, tally);
  tally.scanned_elements += i + (n - j);

  out.pivot_ranks = {0, j + 1, n + 1};
  out.segment_sizes = {j, n - 1 - j};
  return out;
}

PartitionOutcome ybb_partition(std::span<Key> view, Key p1, Key p2) {
  check_dual(view, p1, p2);
  const auto n = static_cast<Index>(view.size());
  CostTally tally;
  ensure_at(view, 0, p1, tally);
  ensure_at(view, view.size() - 1, p2, tally);
  auto at = [view](Index i) -> Key& { return view[static_cast<std::size_t>(i)]; };
  auto [l, g] = ybb_core(at, n, std::less<Key>{}, tally);
  return three_way_outcome(view.size(), static_cast<std::size_t>(l) + 1, static_cast<std::size_t>(g) + 1,
                           tally);
}

PartitionOutcome bby_partition(std::span<Key> view, Key p1, Key p2) {
  check_dual(view, p1, p2);
  const auto n = static_cast<Index>(view.size());
  CostTally tally;
  ensure_at(view, 0, p1, tally);
  ensure_at(view, view.size() - 1, p2, tally);
  // Reflected view: logical 0 is the last cell and the order is reversed.
  auto at = [view, n](Index i) -> Key& { return view[static_cast<std::size_t>(n - 1 - i)]; };
  auto [l, g] = ybb_core(at, n, std::greater<Key>{}, tally);
  const auto r1 = static_cast<std::size_t>(n - g);
  const auto r2 = static_cast<std::size_t>(n - l);
  return three_way_outcome(view.size(), r1, r2, tally);
}

PartitionOutcome waterloo_partition(std::span<Key> view, Key p1, Key p2, Key p3) {
  if (view.size() < 3) throw std::invalid_argument("Waterloo partitioning needs three elements");
  if (!(p1 < p2 && p2 < p3)) throw std::invalid_argument("Waterloo partitioning needs p1 < p2 < p3");
  const auto n = static_cast<Index>(view.size());
  PartitionOutcome out;
  CostTally& tally = out.tally;
  ensure_at(view, 0, p1, tally);
  ensure_at(view, 1, p2, tally);
  ensure_at(view, view.size() - 1, p3, tally);

  auto v = [view](Index i) -> Key& { return view[static_cast<std::size_t>(i)]; };
  auto swap_cells = [&](Index i, Index j) {
    if (i != j) std::swap(v(i), v(j));
    tally.write_accesses += 2;
  };

  Index a = 2;
  Index b = 2;
  Index c = n - 2;
  Index d = n - 2;
  while (b <= c) {
    while (b <= c) {
      ++tally.comparisons;
      if (!(v(b) < p2)) break;
      ++tally.comparisons;
      if (v(b) < p1) {
        swap_cells(a, b);
        ++a;
      }
      ++b;
    }
    while (b <= c) {
      ++tally.comparisons;
      if (!(v(c) > p2)) break;
      ++tally.comparisons;
      if (v(c) > p3) {
        swap_cells(c, d);
        --d;
      }
      --c;
    }
    if (b <= c) {
      // v(b) > p2 > v(c)
      ++tally.comparisons;
      const bool b_large = v(b) > p3;
      ++tally.comparisons;
      const bool c_small = v(c) < p1;
      if (c_small) {
        swap_cells(b, a);
        swap_cells(a, c);
        ++a;
      } else {
        swap_cells(b, c);
      }
      if (b_large) {
        swap_cells(c, d);
        --d;
      }
      ++b;
      --c;
    }
  }
  tally.scanned_elements += static_cast<std::uint64_t>((b - 2) + (a - 2) + (n - 2 - c) + (n - 2 - d));

  const auto j1 = static_cast<std::size_t>(a - 2);
  const auto j2 = static_cast<std::size_t>(b - a);
  const auto j3 = static_cast<std::size_t>(d - c);
  const auto j4 = static_cast<std::size_t>(n - 2 - d);

  --a;
  --b;
  ++d;
  if (a != 1) swap_cells(1, a);
  if (a != b) swap_cells(a, b);
  --a;
  if (a != 0) swap_cells(0, a);
  if (d != n - 1) swap_cells(n - 1, d);

  out.segment_sizes = {j1, j2, j3, j4};
  out.pivot_ranks = {0, j1 + 1, j1 + j2 + 2, j1 + j2 + j3 + 3, view.size() + 1};
  return out;
}

PartitionOutcome partition_with(Method method, std::span<Key> view, std::span<const Key> pivots) {
  if (pivots.size() + 1 != static_cast<std::size_t>(method_arity(method))) {
    throw std::invalid_argument("wrong number of pivots for " + std::string(method_name(method)));
  }
  switch (method) {
    case Method::kClassic: return hoare_partition(view, pivots[0]);
    case Method::kYbb: return ybb_partition(view, pivots[0], pivots[1]);
    case Method::kBby: return bby_partition(view, pivots[0], pivots[1]);
    case Method::kWaterloo: return waterloo_partition(view, pivots[0], pivots[1], pivots[2]);
  }
  throw std::logic_error("unreachable");
}

double betabinomial_pmf(std::size_t n, double a, double b, std::size_t j) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("beta-binomial shape parameters must be positive");
  if (j > n) throw std::invalid_argument("beta-binomial support is 0..n");
  const auto nn = static_cast<double>(n);
  const auto jj = static_cast<double>(j);
  auto log_beta = [](double x, double y) { return std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y); };
  const double log_choose = std::lgamma(nn + 1.0) - std::lgamma(jj + 1.0) - std::lgamma(nn - jj + 1.0);
  return std::exp(log_choose + log_beta(a + jj, b + nn - jj) - log_beta(a, b));
}

}  // namespace qsl
