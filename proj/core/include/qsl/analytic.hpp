#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qsl/types.hpp"

namespace qsl {

/// Binary entropy h(x) = -x ln x - (1-x) ln(1-x), with 0 ln 0 = 0.
double entropy(double x);

/// H(t) = 1 - sum_l (t_l+1)(t_l+2) / ((k+1)(k+2)).
Rational h_const(const SamplingScheme& scheme);

/// Leading coefficient a / H(t) of the grand average for a non-adaptive method.
double grand_avg_leading(double a, const SamplingScheme& scheme);

/// Scanned-element coefficient of one partitioning round: 1 for classic,
/// 1 + tau_1 for YBB, 1 + tau_3 for BBY, 1 + tau_1 + tau_4 for Waterloo.
Rational a_se(Method method, const SamplingScheme& scheme);

/// Best of YBB and BBY for a three-segment vector: 1 + min(tau_1, tau_3).
Rational a_se_dual_best(const SamplingScheme& scheme);

/// Leading per-round coefficient where a closed form is known, nullopt
/// otherwise (then estimate_a_empirical applies).
std::optional<Rational> a_coefficient(Method method, const SamplingScheme& scheme, Measure measure);

/// Fixed-quantile leading terms of classic Quickselect (a (2 + 2h)) and
/// YBB Quickselect without sampling (a (3/2 + h)).
double f_cqs(double alpha, double a);
double f_yqs(double alpha, double a);

/// Exact expected comparisons of classic Quickselect without sampling
/// (pivot is the first element, n - 1 comparisons per round).
double exact_cqs_comparisons(std::size_t n, std::size_t m);

/// Integral of f over [0, 1] by adaptive Gauss-Kronrod quadrature, split at
/// the given interior breakpoints. Absolute tolerance about 1e-9.
double grand_average_of(const std::function<double(double)>& f, std::span<const double> breakpoints = {});

// Sesquickselect with sample size 2 and threshold nu.

/// Thresholds accepted by the closed form. Below the lower guard the
/// denominator vanishes like nu^4 and even 50-digit arithmetic loses the
/// constants.
inline constexpr double kSqs2NuMin = 1e-6;
inline constexpr double kSqs2NuMax = 0.5;

struct Sqs2Constants {
  double nu;
  Measure measure;
  /// C1 .. C6 (index 0 .. 5).
  std::array<double, 6> c;
  /// Common denominator Delta(nu).
  double delta;
};

/// Constants of the piecewise closed form for measure C or SE.
/// Throws std::invalid_argument for nu outside [kSqs2NuMin, kSqs2NuMax]
/// ("degenerate threshold") or an unsupported measure.
Sqs2Constants sqs2_constants(double nu, Measure measure);

/// Delta(nu) and Q_a(nu) in double precision (used by tests and reports).
double sqs2_delta(double nu);
double sqs2_q(double a, double nu);

/// Evaluates the closed form from precomputed constants; symmetric in alpha.
double f_sqs2(double alpha, const Sqs2Constants& constants);
double f_sqs2(double alpha, double nu, Measure measure);

/// Grand average of f_sqs2.
double sqs2_grand_average(const Sqs2Constants& constants);

/// One-sided values g1(nu) = f1(nu) and g2(nu) = f2(nu) of the two branches.
struct BranchValues {
  double g1;
  double g2;
};
BranchValues sqs2_branches(double nu, Measure measure);

/// Threshold where g1 = g2, by bisection to 1e-8 on (1e-4, 1/2 - 1e-4).
/// Throws DiagnosticError when the bracket shows no sign change (this is the
/// case for comparisons).
double find_nu_star(Measure measure);

// Published reference values.

struct Table1Row {
  int s;
  std::string name;
  double comparisons;
  double scanned_elements;
  double write_accesses;
  /// Rows without an implemented partitioning method.
  bool fixture_only;
};

/// Grand averages without sampling for s = 2..8.
std::span<const Table1Row> table1_fixture();

struct Table2Column {
  std::string variant;  // "PROP2", "YQS", "SQS"
  Measure measure;
  double at_zero;
  double at_half;
  double average;
  /// True where the published value carries a trailing "+" (truncated).
  bool truncated_half;
  bool truncated_average;
};

std::span<const Table2Column> table2_fixture();

}  // namespace qsl
