#include <cmath>
#include <initializer_list>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/math/tools/roots.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "qsl/analytic.hpp"

namespace qsl {
namespace {

using Big = boost::multiprecision::cpp_bin_float_50;

// <a_n, ..., a_0> shorthand: polynomial with the leading coefficient first.
template <class T>
T poly(std::initializer_list<int> coeffs, const T& x) {
  T r = 0;
  for (int c : coeffs) r = r * x + c;
  return r;
}

template <class T>
T delta_of(const T& nu) {
  using std::log;
  const T L = log(1 - nu);
  const T n2 = nu * nu, n3 = n2 * nu, n4 = n3 * nu, n5 = n4 * nu, n6 = n5 * nu;
  return 2 * (60 * L * n6 - 360 * L * n5 - 140 * n6 + 780 * L * n4 + 480 * n5 - 840 * L * n3 - 635 * n4 +
              504 * L * n2 + 428 * n3 - 168 * L * nu - 156 * n2 + 24 * L + 24 * nu);
}

template <class T>
T q_of(const T& a, const T& nu) {
  using std::log;
  return (poly<T>({1, -4, 4, -2, 0}, nu) + a) * (1 - nu) * (1 - nu) * log(1 - nu);
}

struct BigConstants {
  Big c1, c3, c4, c5, delta;
};

BigConstants big_constants(const Big& nu, Measure measure) {
  using std::log;
  const Big L = log(1 - nu);
  const Big ln = log(nu);
  const Big half = Big(1) / 2;
  const Big n7 = pow(nu, 7), n8 = n7 * nu, n9 = n8 * nu;
  BigConstants k;
  k.delta = delta_of(nu);
  if (measure == Measure::kComparisons) {
    k.c1 = poly<Big>({20, -120, 260, -276, 162, -52, 7}, nu);
    k.c3 = 12 * q_of(half, nu) * (ln - L) + poly<Big>({6, 16, -69, 70, -24, -2, 2}, nu) * L +
           poly<Big>({-26, 92, -125, 86, -33, 6}, nu) * nu * ln + poly<Big>({45, -124, 121, -52, 5, 2}, nu) * nu;
    k.c4 = -12 * q_of(half, nu) * L + poly<Big>({168, -956, 2031, -2180, 1317, -446, 65}, nu) * L -
           Big(20) / 3 * n9 + 30 * n8 - Big(170) / 3 * n7 +
           poly<Big>({-1644, 6792, -9409, 6514, -2445, 390}, nu) * nu / 6;
    k.c5 = 228 * q_of(Big(15) / 38, nu) + poly<Big>({-534, 1828, -2415, 1626, -591, 90}, nu) * nu;
  } else {
    k.c1 = poly<Big>({20, -120, 260, -264, 144, -40, 4}, nu);
    k.c3 = 48 * q_of(half, nu) * (ln - L) + poly<Big>({90, -308, 510, -560, 408, -176, 32}, nu) * L +
           poly<Big>({-110, 380, -506, 344, -132, 24}, nu) * nu * ln +
           poly<Big>({45, -40, -125, 212, -136, 32}, nu) * nu;
    k.c4 = -48 * q_of(half, nu) * L + poly<Big>({198, -956, 1890, -2000, 1236, -440, 68}, nu) * L -
           Big(20) / 3 * n9 + 30 * n8 - Big(170) / 3 * n7 +
           poly<Big>({-456, 2352, -3641, 2756, -1146, 204}, nu) * nu / 3;
    k.c5 = 192 * q_of(Big(3) / 8, nu) + poly<Big>({-450, 1540, -2034, 1368, -492, 72}, nu) * nu;
  }
  k.c1 /= k.delta;
  k.c3 /= k.delta;
  k.c4 /= k.delta;
  k.c5 /= k.delta;
  return k;
}

void check_nu(double nu) {
  if (!(nu >= kSqs2NuMin && nu <= kSqs2NuMax)) {
    throw std::invalid_argument("degenerate threshold nu = " + std::to_string(nu) + "; need nu in [" +
                                std::to_string(kSqs2NuMin) + ", 1/2]");
  }
}

void check_measure(Measure measure) {
  if (measure == Measure::kWriteAccesses) {
    throw std::invalid_argument("the Sesquickselect closed form covers comparisons and scanned elements only");
  }
}

// x^3/6 + x^2/2 - x - (1-x) ln(1-x) = -sum_{j>=4} x^j / (j (j-1)).
template <class T>
T cubic_log_term(const T& x) {
  using std::log;
  if (x < 0.25) {
    T sum = 0;
    T p = x * x * x * x;
    for (int j = 4; j < 200; ++j) {
      const T term = p / (j * (j - 1));
      sum += term;
      if (term <= sum * std::numeric_limits<T>::epsilon()) break;
      p *= x;
    }
    return -sum;
  }
  return x * x * x / 6 + x * x / 2 - x - (1 - x) * log(1 - x);
}

template <class T>
T entropy_of(const T& x) {
  using std::log;
  if (x <= 0 || x >= 1) return T(0);
  return -x * log(x) - (1 - x) * log(1 - x);
}

}  // namespace

double sqs2_delta(double nu) { return delta_of(nu); }

double sqs2_q(double a, double nu) { return q_of(a, nu); }

Sqs2Constants sqs2_constants(double nu, Measure measure) {
  check_nu(nu);
  check_measure(measure);
  const BigConstants k = big_constants(Big(nu), measure);
  Sqs2Constants out{nu, measure, {}, static_cast<double>(k.delta)};
  out.c = {static_cast<double>(k.c1), 2.0, static_cast<double>(k.c3), static_cast<double>(k.c4),
           static_cast<double>(k.c5), 1.5};
  for (double c : out.c) {
    if (!std::isfinite(c)) throw DiagnosticError("non-finite Sesquickselect constant at nu = " + std::to_string(nu));
  }
  return out;
}

double f_sqs2(double alpha, const Sqs2Constants& k) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in [0, 1]");
  const double x = std::min(alpha, 1.0 - alpha);
  // With nu = 1/2 the middle interval is empty.
  if (x < k.nu || k.nu >= 0.5) return k.c[0] * cubic_log_term(x) + k.c[1] * entropy(x) + k.c[2] * x + k.c[5];
  return k.c[3] + k.c[4] * entropy(x);
}

double f_sqs2(double alpha, double nu, Measure measure) { return f_sqs2(alpha, sqs2_constants(nu, measure)); }

double sqs2_grand_average(const Sqs2Constants& k) {
  const double cuts[] = {k.nu, 1.0 - k.nu};
  return grand_average_of([&k](double a) { return f_sqs2(a, k); }, cuts);
}

BranchValues sqs2_branches(double nu, Measure measure) {
  check_nu(nu);
  check_measure(measure);
  const Big x(nu);
  const BigConstants k = big_constants(x, measure);
  const Big g1 = k.c1 * cubic_log_term(x) + 2 * entropy_of(x) + k.c3 * x + Big(3) / 2;
  const Big g2 = k.c4 + k.c5 * entropy_of(x);
  return {static_cast<double>(g1), static_cast<double>(g2)};
}

double find_nu_star(Measure measure) {
  check_measure(measure);
  auto diff = [measure](double nu) {
    const BranchValues g = sqs2_branches(nu, measure);
    return g.g1 - g.g2;
  };
  const double lo = 1e-4;
  const double hi = 0.5 - 1e-4;
  const double f_lo = diff(lo);
  const double f_hi = diff(hi);
  if (!(f_lo * f_hi < 0.0)) {
    throw DiagnosticError("no sign change of g1 - g2 for measure " + std::string(measure_name(measure)) +
                          " on [" + std::to_string(lo) + ", " + std::to_string(hi) + "]: " +
                          std::to_string(f_lo) + " and " + std::to_string(f_hi));
  }
  auto done = [](double a, double b) { return b - a < 1e-8; };
  const auto [a, b] = boost::math::tools::bisect(diff, lo, hi, done);
  return 0.5 * (a + b);
}

}  // namespace qsl
