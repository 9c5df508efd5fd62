#include "qsl/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/digamma.hpp>

namespace qsl {

double entropy(double x) {
  if (x < 0.0 || x > 1.0) throw std::invalid_argument("entropy needs x in [0, 1]");
  auto xlogx = [](double v) { return v > 0.0 ? v * std::log(v) : 0.0; };
  return -xlogx(x) - xlogx(1.0 - x);
}

Rational h_const(const SamplingScheme& scheme) {
  const std::int64_t k = scheme.sample_size();
  Rational sum = 0;
  for (int t : scheme.t()) sum += Rational(std::int64_t{t + 1} * (t + 2), (k + 1) * (k + 2));
  return Rational(1) - sum;
}

double grand_avg_leading(double a, const SamplingScheme& scheme) {
  if (!(a > 0.0)) throw std::invalid_argument("leading coefficient must be positive");
  return a / boost::rational_cast<double>(h_const(scheme));
}

Rational a_se(Method method, const SamplingScheme& scheme) {
  if (method_arity(method) != scheme.segments()) {
    throw std::invalid_argument("method " + std::string(method_name(method)) + " cannot use sampling vector " +
                                scheme.to_string());
  }
  switch (method) {
    case Method::kClassic: return 1;
    case Method::kYbb: return 1 + scheme.tau(0);
    case Method::kBby: return 1 + scheme.tau(2);
    case Method::kWaterloo: return 1 + scheme.tau(0) + scheme.tau(3);
  }
  throw std::logic_error("unreachable");
}

Rational a_se_dual_best(const SamplingScheme& scheme) {
  if (scheme.segments() != 3) throw std::invalid_argument("dual-pivot rule needs a three-segment vector");
  return 1 + std::min(scheme.tau(0), scheme.tau(2));
}

std::optional<Rational> a_coefficient(Method method, const SamplingScheme& scheme, Measure measure) {
  const bool plain = std::all_of(scheme.t().begin(), scheme.t().end(), [](int t) { return t == 0; });
  switch (measure) {
    case Measure::kScannedElements: return a_se(method, scheme);
    case Measure::kComparisons:
      if (method_arity(method) != scheme.segments()) return std::nullopt;
      if (method == Method::kClassic) return Rational(1);
      if (method == Method::kWaterloo) return Rational(2);
      if (plain) return Rational(19, 12);
      return std::nullopt;
    case Measure::kWriteAccesses:
      if (!plain) return std::nullopt;
      if (method == Method::kClassic && scheme.segments() == 2) return Rational(1, 3);
      if ((method == Method::kYbb || method == Method::kBby) && scheme.segments() == 3) return Rational(11, 12);
      return std::nullopt;
  }
  return std::nullopt;
}

double f_cqs(double alpha, double a) { return a * (2.0 + 2.0 * entropy(alpha)); }

double f_yqs(double alpha, double a) { return a * (1.5 + entropy(alpha)); }

double exact_cqs_comparisons(std::size_t n, std::size_t m) {
  if (m < 1 || m > n) throw std::invalid_argument("rank outside [1..n]");
  const double euler = boost::math::constants::euler<double>();
  auto harmonic = [euler](double x) { return boost::math::digamma(x + 1.0) + euler; };
  const auto nn = static_cast<double>(n);
  const auto mm = static_cast<double>(m);
  return 2.0 * ((nn + 1.0) * harmonic(nn) - (nn + 3.0 - mm) * harmonic(nn + 1.0 - mm) -
                (mm + 2.0) * harmonic(mm) + nn + 3.0);
}

double grand_average_of(const std::function<double(double)>& f, std::span<const double> breakpoints) {
  std::vector<double> cuts{0.0};
  for (double b : breakpoints) {
    if (b > 0.0 && b < 1.0) cuts.push_back(b);
  }
  cuts.push_back(1.0);
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    if (cuts[i] <= cuts[i - 1]) continue;
    double error = 0.0;
    total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, cuts[i - 1], cuts[i], 15, 1e-12,
                                                                            &error);
  }
  return total;
}

std::span<const Table1Row> table1_fixture() {
  static const std::vector<Table1Row> rows = {
      {2, "classic", 3.0, 3.0, 1.0, false},
      {3, "YBB", 19.0 / 6.0, 8.0 / 3.0, 11.0 / 6.0, false},
      {4, "Waterloo", 10.0 / 3.0, 2.5, 2.0, false},
      {5, "", 3.5, 2.7, 2.35, true},
      {6, "", 11.0 / 3.0, 2.8, 38.0 / 15.0, true},
      {7, "", 265.0 / 70.0, 64.0 / 21.0, 17.0 / 6.0, true},
      {8, "", 27.0 / 7.0, 45.0 / 14.0, 85.0 / 28.0, true},
  };
  return rows;
}

std::span<const Table2Column> table2_fixture() {
  static const std::vector<Table2Column> cols = {
      {"PROP2", Measure::kComparisons, 1.5, 3.113, 2.598, true, true},
      {"PROP2", Measure::kScannedElements, 1.5, 3.113, 2.598, true, true},
      {"YQS", Measure::kComparisons, 2.375, 3.472, 19.0 / 6.0, true, false},
      {"SQS", Measure::kComparisons, 1.5, 3.252, 2.733, true, true},
      {"YQS", Measure::kScannedElements, 2.0, 2.924, 8.0 / 3.0, true, false},
      {"SQS", Measure::kScannedElements, 1.5, 2.843, 2.500, true, true},
  };
  return cols;
}

}  // namespace qsl
