#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace qsl {

/// Pairwise (cascade) summation in index order; the result depends only on
/// the values and their order.
double pairwise_sum(std::span<const double> values);

struct ChiSquareResult {
  double statistic = 0.0;
  int degrees_of_freedom = 0;
  double p_value = 1.0;
  /// Number of bins after pooling.
  int bins = 0;
};

/// Pearson goodness-of-fit test of observed counts against cell
/// probabilities. Adjacent cells are pooled left to right until each pooled
/// cell expects at least min_expected observations.
ChiSquareResult chi_square_test(std::span<const std::uint64_t> observed, std::span<const double> probabilities,
                                double min_expected = 5.0);

/// Two-sided p-value of the difference of two independent means with the
/// given standard errors (normal approximation).
double two_sample_p_value(double mean_a, double se_a, double mean_b, double se_b);

}  // namespace qsl
