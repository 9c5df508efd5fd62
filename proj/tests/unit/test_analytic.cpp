#include <cmath>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "qsl/analytic.hpp"
#include "qsl/rng.hpp"
#include "qsl/solver.hpp"

namespace qsl {
namespace {

double to_double(Rational r) { return boost::rational_cast<double>(r); }

TEST(Entropy, Values) {
  EXPECT_NEAR(entropy(0.25), 0.562335144618808, 1e-12);
  EXPECT_DOUBLE_EQ(entropy(0.0), 0.0);
  EXPECT_DOUBLE_EQ(entropy(1.0), 0.0);
  EXPECT_NEAR(entropy(0.5), std::log(2.0), 1e-15);
  EXPECT_THROW(entropy(-0.1), std::invalid_argument);
}

// 1 - sum E[D_l^2] for D ~ Dirichlet(t + 1), evaluated in floating point.
double h_oracle(const std::vector<int>& t) {
  double k1 = 0.0;
  for (int v : t) k1 += v + 1;
  double sum = 0.0;
  for (int v : t) sum += (v + 1.0) * (v + 2.0) / (k1 * (k1 + 1.0));
  return 1.0 - sum;
}

TEST(HConst, MatchesDirichletMoments) {
  EXPECT_EQ(h_const(SamplingScheme({0, 0})), Rational(1, 3));
  EXPECT_EQ(h_const(SamplingScheme({0, 0, 0})), Rational(1, 2));
  EXPECT_EQ(h_const(SamplingScheme({0, 0, 0, 0})), Rational(3, 5));
  for (const std::vector<int>& t : std::vector<std::vector<int>>{{1, 1}, {0, 3}, {2, 0, 1}, {1, 2, 3, 4}, {5, 5}}) {
    EXPECT_NEAR(to_double(h_const(SamplingScheme(t))), h_oracle(t), 1e-15);
  }
}

TEST(Table1, ExactRowsFollowFromCoefficients) {
  const auto rows = table1_fixture();
  ASSERT_EQ(rows.size(), 7u);
  const Method methods[] = {Method::kClassic, Method::kYbb, Method::kWaterloo};
  for (int s = 2; s <= 4; ++s) {
    const auto& row = rows[static_cast<std::size_t>(s - 2)];
    EXPECT_FALSE(row.fixture_only);
    const SamplingScheme t(std::vector<int>(static_cast<std::size_t>(s), 0));
    const Method m = methods[s - 2];
    EXPECT_NEAR(grand_avg_leading(to_double(*a_coefficient(m, t, Measure::kComparisons)), t), row.comparisons,
                1e-12);
    EXPECT_NEAR(grand_avg_leading(to_double(*a_coefficient(m, t, Measure::kScannedElements)), t),
                row.scanned_elements, 1e-12);
    if (m != Method::kWaterloo) {
      EXPECT_NEAR(grand_avg_leading(to_double(*a_coefficient(m, t, Measure::kWriteAccesses)), t),
                  row.write_accesses, 1e-12);
    }
  }
  for (std::size_t i = 3; i < rows.size(); ++i) EXPECT_TRUE(rows[i].fixture_only);
  EXPECT_NEAR(rows[5].comparisons, 3.7857142857, 1e-9);
  EXPECT_NEAR(rows[6].write_accesses, 3.0357142857, 1e-9);
}

TEST(Coefficients, ScannedElements) {
  EXPECT_EQ(a_se(Method::kClassic, SamplingScheme({3, 1})), Rational(1));
  EXPECT_EQ(a_se(Method::kYbb, SamplingScheme({0, 1, 2})), Rational(7, 6));
  EXPECT_EQ(a_se(Method::kBby, SamplingScheme({0, 1, 2})), Rational(3, 2));
  EXPECT_EQ(a_se(Method::kWaterloo, SamplingScheme({0, 0, 0, 0})), Rational(3, 2));
  EXPECT_EQ(a_se_dual_best(SamplingScheme({0, 1, 2})), Rational(7, 6));
  EXPECT_THROW(a_se(Method::kYbb, SamplingScheme({0, 0})), std::invalid_argument);
  EXPECT_FALSE(a_coefficient(Method::kYbb, SamplingScheme({1, 1, 1}), Measure::kComparisons).has_value());
}

// Leading comparisons of one YBB round with D ~ Dirichlet(t + 1):
// 1 + E[(D1 + D2)(D2 + 2 D3)].
double ybb_comparisons_oracle(const std::vector<int>& t) {
  double k2 = 0.0;
  for (int v : t) k2 += v + 1;
  const double denom = k2 * (k2 + 1.0);
  auto mixed = [&](int i, int j) {
    const double ti = t[static_cast<std::size_t>(i)] + 1.0;
    return i == j ? ti * (ti + 1.0) / denom : ti * (t[static_cast<std::size_t>(j)] + 1.0) / denom;
  };
  return 1.0 + mixed(0, 1) + 2.0 * mixed(0, 2) + mixed(1, 1) + 2.0 * mixed(1, 2);
}

TEST(Coefficients, YbbComparisonOracleAgreesWithClosedForm) {
  EXPECT_NEAR(ybb_comparisons_oracle({0, 0, 0}),
              to_double(*a_coefficient(Method::kYbb, SamplingScheme({0, 0, 0}), Measure::kComparisons)), 1e-15);
}

TEST(Coefficients, EmpiricalMatchesOracles) {
  struct Case {
    Method method;
    std::vector<int> t;
    Measure measure;
    double expected;
  };
  const std::vector<Case> cases = {
      {Method::kYbb, {1, 1, 1}, Measure::kComparisons, ybb_comparisons_oracle({1, 1, 1})},
      {Method::kYbb, {0, 1, 2}, Measure::kComparisons, ybb_comparisons_oracle({0, 1, 2})},
      {Method::kYbb, {0, 0, 0}, Measure::kComparisons, 19.0 / 12.0},
      {Method::kYbb, {1, 0, 2}, Measure::kScannedElements, to_double(a_se(Method::kYbb, SamplingScheme({1, 0, 2})))},
      {Method::kWaterloo, {1, 0, 0, 1}, Measure::kScannedElements,
       to_double(a_se(Method::kWaterloo, SamplingScheme({1, 0, 0, 1})))},
      {Method::kClassic, {0, 0}, Measure::kWriteAccesses, 1.0 / 3.0},
  };
  Rng rng(31);
  for (const Case& c : cases) {
    const auto est = estimate_a_empirical(c.method, SamplingScheme(c.t), c.measure, 20000, 2000, rng);
    EXPECT_NEAR(est.mean, c.expected, 4.0 * est.std_error + 2e-3)
        << method_name(c.method) << SamplingScheme(c.t).to_string();
  }
}

// E[C(n, m)] for classic Quickselect by its defining recurrence.
std::vector<std::vector<double>> cqs_recurrence(int nmax) {
  std::vector<std::vector<double>> c(static_cast<std::size_t>(nmax + 1));
  for (int n = 1; n <= nmax; ++n) {
    c[static_cast<std::size_t>(n)].assign(static_cast<std::size_t>(n + 1), 0.0);
    for (int m = 1; m <= n; ++m) {
      if (n == 1) continue;
      double sum = 0.0;
      for (int r = 1; r <= n; ++r) {
        if (r > m) sum += c[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(m)];
        if (r < m) sum += c[static_cast<std::size_t>(n - r)][static_cast<std::size_t>(m - r)];
      }
      c[static_cast<std::size_t>(n)][static_cast<std::size_t>(m)] = (n - 1) + sum / n;
    }
  }
  return c;
}

TEST(ExactCqs, MatchesRecurrence) {
  EXPECT_NEAR(exact_cqs_comparisons(1, 1), 0.0, 1e-12);
  EXPECT_NEAR(exact_cqs_comparisons(2, 1), 1.0, 1e-12);
  const auto c = cqs_recurrence(60);
  for (int n = 1; n <= 60; ++n) {
    for (int m = 1; m <= n; ++m) {
      EXPECT_NEAR(exact_cqs_comparisons(static_cast<std::size_t>(n), static_cast<std::size_t>(m)),
                  c[static_cast<std::size_t>(n)][static_cast<std::size_t>(m)], 1e-9)
          << n << "," << m;
    }
  }
}

TEST(ExactCqs, LeadingTermIsFcqs) {
  const std::size_t n = 10000000;
  for (double alpha : {0.1, 0.25, 0.5, 0.9}) {
    const auto m = static_cast<std::size_t>(alpha * n);
    EXPECT_NEAR(exact_cqs_comparisons(n, m) / n, f_cqs(alpha, 1.0), 1e-4);
  }
}

TEST(GrandAverage, ClosedForms) {
  EXPECT_NEAR(grand_average_of([](double a) { return f_cqs(a, 1.0); }), 3.0, 1e-10);
  EXPECT_NEAR(grand_average_of([](double a) { return f_yqs(a, 4.0 / 3.0); }), 8.0 / 3.0, 1e-10);
  EXPECT_NEAR(grand_average_of([](double a) { return f_yqs(a, 19.0 / 12.0); }), 19.0 / 6.0, 1e-10);
  const double cuts[] = {0.3};
  EXPECT_NEAR(grand_average_of([](double a) { return a < 0.3 ? 1.0 : 2.0; }, cuts), 1.7, 1e-12);
}

TEST(Sesquickselect, BranchValuesAtGuards) {
  const auto low = sqs2_branches(kSqs2NuMin, Measure::kScannedElements);
  EXPECT_NEAR(low.g1, 5.0 / 3.0, 5e-3);
  EXPECT_NEAR(low.g2, 2.0, 5e-3);
  const auto high = sqs2_branches(kSqs2NuMax, Measure::kScannedElements);
  EXPECT_NEAR(high.g1, 3.112, 5e-3);
  EXPECT_NEAR(high.g2, 2.910, 5e-3);
}

TEST(Sesquickselect, NuStar) {
  const double nu = find_nu_star(Measure::kScannedElements);
  EXPECT_NEAR(nu, 0.265717, 1e-4);
  const auto b = sqs2_branches(nu, Measure::kScannedElements);
  EXPECT_NEAR(b.g1, b.g2, 1e-6);
  EXPECT_THROW(find_nu_star(Measure::kComparisons), DiagnosticError);
}

TEST(Sesquickselect, TableValues) {
  const double nu = find_nu_star(Measure::kScannedElements);
  const auto se = sqs2_constants(nu, Measure::kScannedElements);
  EXPECT_NEAR(f_sqs2(0.0, se), 1.5, 5e-3);
  EXPECT_NEAR(f_sqs2(0.5, se), 2.843, 5e-3);
  EXPECT_NEAR(sqs2_grand_average(se), 2.5004, 5e-3);
  const auto c = sqs2_constants(nu, Measure::kComparisons);
  EXPECT_NEAR(f_sqs2(0.0, c), 1.5, 5e-3);
  EXPECT_NEAR(f_sqs2(0.5, c), 3.252, 5e-3);
  EXPECT_NEAR(sqs2_grand_average(c), 2.733, 5e-3);
  const auto prop2 = sqs2_constants(0.5, Measure::kScannedElements);
  EXPECT_NEAR(f_sqs2(0.5, prop2), 3.113, 5e-3);
  EXPECT_NEAR(sqs2_grand_average(prop2), 2.598, 5e-3);
}

TEST(Sesquickselect, SymmetricAndContinuousAtOptimum) {
  const double nu = find_nu_star(Measure::kScannedElements);
  const auto k = sqs2_constants(nu, Measure::kScannedElements);
  for (double a : {0.01, 0.1, 0.2, 0.3, 0.45}) EXPECT_NEAR(f_sqs2(a, k), f_sqs2(1.0 - a, k), 1e-9);
  EXPECT_NEAR(f_sqs2(nu - 1e-7, k), f_sqs2(nu + 1e-7, k), 1e-5);
}

TEST(Sesquickselect, DegenerateThresholds) {
  EXPECT_THROW(sqs2_constants(0.0, Measure::kScannedElements), std::invalid_argument);
  EXPECT_THROW(sqs2_constants(0.6, Measure::kScannedElements), std::invalid_argument);
  EXPECT_THROW(sqs2_constants(0.2, Measure::kWriteAccesses), std::invalid_argument);
}

TEST(Table2, FixtureMatchesPublishedValues) {
  const auto cols = table2_fixture();
  ASSERT_EQ(cols.size(), 6u);
  for (const auto& col : cols) {
    EXPECT_EQ(col.at_zero, col.variant == "YQS" ? (col.measure == Measure::kComparisons ? 2.375 : 2.0) : 1.5);
  }
  // The YQS columns are closed forms.
  EXPECT_NEAR(f_yqs(0.0, 19.0 / 12.0), 2.375, 1e-12);
  EXPECT_NEAR(f_yqs(0.5, 19.0 / 12.0), 3.472, 1e-3);
  EXPECT_NEAR(f_yqs(0.5, 4.0 / 3.0), 2.924, 1e-3);
}

}  // namespace
}  // namespace qsl
