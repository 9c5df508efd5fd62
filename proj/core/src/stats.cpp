#include "qsl/stats.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

namespace qsl {

double pairwise_sum(std::span<const double> values) {
  constexpr std::size_t kBlock = 64;
  if (values.size() <= kBlock) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

ChiSquareResult chi_square_test(std::span<const std::uint64_t> observed, std::span<const double> probabilities,
                                double min_expected) {
  if (observed.size() != probabilities.size() || observed.empty()) {
    throw std::invalid_argument("observed counts and probabilities must be non-empty and of equal length");
  }
  const double total = static_cast<double>(std::accumulate(observed.begin(), observed.end(), std::uint64_t{0}));
  if (total == 0.0) throw std::invalid_argument("chi-square test needs observations");

  std::vector<double> obs;
  std::vector<double> exp;
  double o = 0.0;
  double e = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    o += static_cast<double>(observed[i]);
    e += probabilities[i] * total;
    if (e >= min_expected) {
      obs.push_back(o);
      exp.push_back(e);
      o = e = 0.0;
    }
  }
  if (e > 0.0 || o > 0.0) {
    if (exp.empty()) {
      obs.push_back(o);
      exp.push_back(e);
    } else {
      obs.back() += o;
      exp.back() += e;
    }
  }

  ChiSquareResult r;
  r.bins = static_cast<int>(obs.size());
  for (std::size_t i = 0; i < obs.size(); ++i) {
    const double d = obs[i] - exp[i];
    r.statistic += d * d / exp[i];
  }
  r.degrees_of_freedom = r.bins - 1;
  if (r.degrees_of_freedom < 1) {
    r.p_value = 1.0;
    return r;
  }
  boost::math::chi_squared dist(r.degrees_of_freedom);
  r.p_value = boost::math::cdf(boost::math::complement(dist, r.statistic));
  return r;
}

double two_sample_p_value(double mean_a, double se_a, double mean_b, double se_b) {
  const double se = std::sqrt(se_a * se_a + se_b * se_b);
  if (se == 0.0) return mean_a == mean_b ? 1.0 : 0.0;
  const double z = std::abs(mean_a - mean_b) / se;
  return 2.0 * boost::math::cdf(boost::math::complement(boost::math::normal(), z));
}

}  // namespace qsl
