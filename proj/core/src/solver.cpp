#include "qsl/solver.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <boost/math/quadrature/gauss.hpp>

#include "qsl/analytic.hpp"
#include "qsl/partition.hpp"

namespace qsl {

GridFunction::GridFunction(std::size_t n, std::vector<std::size_t> breakpoint_nodes)
    : n_(n), breaks_(std::move(breakpoint_nodes)), values_(n + 1, 0.0), left_(breaks_.size(), 0.0) {
  if (n_ < 1) throw std::invalid_argument("grid needs at least one cell");
  for (std::size_t b = 0; b < breaks_.size(); ++b) {
    if (breaks_[b] == 0 || breaks_[b] >= n_ || (b > 0 && breaks_[b] <= breaks_[b - 1])) {
      throw std::invalid_argument("breakpoint nodes must be increasing interior nodes");
    }
  }
}

GridFunction GridFunction::sample(std::size_t n, std::vector<std::size_t> breakpoint_nodes,
                                  const std::function<double(double)>& fn,
                                  const std::function<double(double)>& left_fn) {
  GridFunction g(n, std::move(breakpoint_nodes));
  for (std::size_t i = 0; i <= n; ++i) g.values_[i] = fn(g.alpha(i));
  for (std::size_t b = 0; b < g.breaks_.size(); ++b) {
    const double a = g.alpha(g.breaks_[b]);
    g.left_[b] = left_fn ? left_fn(a) : fn(a);
  }
  return g;
}

bool GridFunction::is_breakpoint(std::size_t node) const {
  return std::binary_search(breaks_.begin(), breaks_.end(), node);
}

double GridFunction::left_limit(std::size_t node) const {
  auto it = std::lower_bound(breaks_.begin(), breaks_.end(), node);
  if (it != breaks_.end() && *it == node) return left_[static_cast<std::size_t>(it - breaks_.begin())];
  return values_.at(node);
}

void GridFunction::set_left_limit(std::size_t node, double value) {
  auto it = std::lower_bound(breaks_.begin(), breaks_.end(), node);
  if (it == breaks_.end() || *it != node) throw std::invalid_argument("node is not a breakpoint");
  left_[static_cast<std::size_t>(it - breaks_.begin())] = value;
}

double GridFunction::operator()(double alpha) const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in [0, 1]");
  const double x = alpha * static_cast<double>(n_);
  const auto j = std::min(static_cast<std::size_t>(x), n_ - 1);
  const double theta = x - static_cast<double>(j);
  if (theta == 0.0) return values_[j];
  if (theta == 1.0) return values_[j + 1];
  return (1.0 - theta) * values_[j] + theta * left_limit(j + 1);
}

double GridFunction::integral() const {
  double sum = 0.0;
  for (std::size_t j = 0; j < n_; ++j) sum += values_[j] + left_limit(j + 1);
  return sum / (2.0 * static_cast<double>(n_));
}

std::vector<double> GridFunction::unknowns() const {
  std::vector<double> u(values_);
  u.insert(u.end(), left_.begin(), left_.end());
  return u;
}

void GridFunction::set_unknowns(std::span<const double> u) {
  if (u.size() != unknown_count()) throw std::invalid_argument("unknown vector has the wrong size");
  std::copy(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(n_ + 1), values_.begin());
  std::copy(u.begin() + static_cast<std::ptrdiff_t>(n_ + 1), u.end(), left_.begin());
}

std::size_t GridFunction::left_unknown(std::size_t node) const {
  auto it = std::lower_bound(breaks_.begin(), breaks_.end(), node);
  if (it != breaks_.end() && *it == node) return n_ + 1 + static_cast<std::size_t>(it - breaks_.begin());
  return node;
}

std::vector<std::size_t> snap_breakpoints(const AdaptivePolicy& policy, std::size_t n) {
  std::vector<std::size_t> nodes;
  const auto b = policy.breakpoints();
  for (std::size_t v = 1; v + 1 < b.size(); ++v) {
    const auto node = static_cast<std::size_t>(std::llround(b[v] * static_cast<double>(n)));
    if (node == 0 || node >= n || (!nodes.empty() && node <= nodes.back())) {
      throw std::invalid_argument("grid with " + std::to_string(n) + " cells cannot resolve breakpoint " +
                                  std::to_string(b[v]));
    }
    nodes.push_back(node);
  }
  return nodes;
}

TStops tstops(const SamplingScheme& scheme) {
  TStops out;
  const int s = scheme.segments();
  const int k = scheme.sample_size();
  int before = 0;
  for (int l = 0; l < s; ++l) {
    out.left.push_back(before - 1);
    out.right.push_back(k - before - scheme.t(l) - 1);
    before += scheme.t(l) + 1;
  }
  return out;
}

CostCoefficient CostCoefficient::closed_form(const AdaptivePolicy& policy, Measure measure) {
  CostCoefficient c;
  for (const auto& seg : policy.segments()) {
    const auto a = a_coefficient(seg.method, seg.scheme, measure);
    if (!a) {
      throw std::invalid_argument("no closed-form " + std::string(measure_name(measure)) + " coefficient for " +
                                  std::string(method_name(seg.method)) + seg.scheme.to_string() +
                                  "; supply it or estimate it empirically");
    }
    c.a.push_back(boost::rational_cast<double>(*a));
  }
  return c;
}

CostCoefficient CostCoefficient::constant(const AdaptivePolicy& policy, double a) {
  return CostCoefficient{std::vector<double>(policy.size(), a)};
}

namespace {

constexpr int kGauss = 8;

struct GaussRule {
  std::array<double, kGauss> x;
  std::array<double, kGauss> w;
};

// Gauss-Legendre rule on [-1, 1].
const GaussRule& gauss_rule() {
  static const GaussRule rule = [] {
    using G = boost::math::quadrature::gauss<double, kGauss>;
    GaussRule r{};
    const auto& ax = G::abscissa();
    const auto& wt = G::weights();
    for (std::size_t i = 0; i < ax.size(); ++i) {
      r.x[2 * i] = ax[i];
      r.w[2 * i] = wt[i];
      r.x[2 * i + 1] = -ax[i];
      r.w[2 * i + 1] = wt[i];
    }
    return r;
  }();
  return rule;
}

double ipow(double x, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

double log_beta(std::initializer_list<int> shapes) {
  double num = 0.0;
  double total = 0.0;
  for (int a : shapes) {
    num += std::lgamma(static_cast<double>(a));
    total += a;
  }
  return num - std::lgamma(total);
}

}  // namespace

IntegralOperator::IntegralOperator(const AdaptivePolicy& policy, const CostCoefficient& coeffs, std::size_t n,
                                   unsigned threads)
    : n_(n), breaks_(snap_breakpoints(policy, n)), m_(n + 1 + breaks_.size()) {
  if (n_ < 2) throw std::invalid_argument("grid needs at least two cells");
  if (coeffs.a.size() != policy.size()) {
    throw std::invalid_argument("cost coefficients must give one value per policy interval");
  }
  for (double a : coeffs.a) {
    if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("cost coefficients must be positive");
  }
  for (const auto& seg : policy.segments()) {
    if (seg.scheme.sample_size() > 2 * kGauss - 1) {
      throw std::invalid_argument("sample size " + std::to_string(seg.scheme.sample_size()) +
                                  " exceeds the exactness of the inner quadrature");
    }
  }
  a_.assign(m_, 0.0);
  w_.assign(m_ * m_, 0.0);

  const GridFunction layout(n_, breaks_);
  const double h = 1.0 / static_cast<double>(n_);
  const GaussRule& gl = gauss_rule();

  // Row r: node value (r <= n) or left limit at breakpoint r - n - 1.
  auto row_node = [&](std::size_t r) { return r <= n_ ? r : breaks_[r - n_ - 1]; };
  auto row_interval = [&](std::size_t r) -> std::size_t {
    if (r > n_) return r - n_ - 1;
    return static_cast<std::size_t>(std::upper_bound(breaks_.begin(), breaks_.end(), r) - breaks_.begin());
  };

  auto build_row = [&](std::size_t r) {
    const std::size_t i = row_node(r);
    const std::size_t v = row_interval(r);
    const SamplingScheme& scheme = policy.segments()[v].scheme;
    const int s = scheme.segments();
    const int k = scheme.sample_size();
    const TStops stops = tstops(scheme);
    double* row = &w_[r * m_];
    a_[r] = coeffs.a[v];
    const double alpha = static_cast<double>(i) * h;

    if (i == 0) {
      row[0] += static_cast<double>(scheme.t(0) + 1) / (k + 1);
      return;
    }
    if (i == n_) {
      row[n_] += static_cast<double>(scheme.t(s - 1) + 1) / (k + 1);
      return;
    }

    // Adds the integral of kernel(x) times the hat functions of cell j.
    auto add_cell = [&](std::size_t j, auto&& kernel) {
      const double x0 = static_cast<double>(j) * h;
      const double mid = x0 + 0.5 * h;
      double left = 0.0;
      double right = 0.0;
      for (int q = 0; q < kGauss; ++q) {
        const double x = mid + 0.5 * h * gl.x[q];
        const double val = kernel(x) * 0.5 * h * gl.w[q];
        const double theta = (x - x0) / h;
        left += val * (1.0 - theta);
        right += val * theta;
      }
      if (!std::isfinite(left) || !std::isfinite(right)) {
        throw DiagnosticError("non-finite kernel weight at alpha = " + std::to_string(alpha));
      }
      row[j] += left;
      row[layout.left_unknown(j + 1)] += right;
    };

    for (int l = 0; l < s; ++l) {
      const int t = scheme.t(l);
      const int lt = stops.left[l];
      const int rt = stops.right[l];
      if (l == 0) {
        const double norm = std::exp(-log_beta({t + 1, rt + 1}));
        auto kernel = [&](double x) {
          const double r = alpha / x;
          return norm * ipow(r, t + 2) / x * ipow(1.0 - r, rt);
        };
        for (std::size_t j = i; j < n_; ++j) add_cell(j, kernel);
      } else if (l == s - 1) {
        const double norm = std::exp(-log_beta({lt + 1, t + 1}));
        auto kernel = [&](double x) {
          const double y = (alpha - x) / (1.0 - x);
          const double z = (1.0 - alpha) / (1.0 - x);
          return norm * ipow(y, lt) * ipow(z, t + 2) / (1.0 - x);
        };
        for (std::size_t j = 0; j < i; ++j) add_cell(j, kernel);
      } else {
        const double norm = std::exp(-log_beta({lt + 1, t + 1, rt + 1}));
        auto kernel = [&](double x) {
          const double u_lo = std::max(0.0, (alpha - x) / (1.0 - x));
          const double half = 0.5 * (alpha - u_lo);
          const double centre = 0.5 * (alpha + u_lo);
          double inner = 0.0;
          for (int q = 0; q < kGauss; ++q) {
            const double u = centre + half * gl.x[q];
            const double d = (alpha - u) / x;
            inner += gl.w[q] * ipow(u, lt) * ipow(d, t + 2) * ipow(std::max(0.0, 1.0 - u - d), rt);
          }
          return norm * inner * half / x;
        };
        for (std::size_t j = 0; j < n_; ++j) add_cell(j, kernel);
      }
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(m_));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (std::size_t r = next++; r < m_ && !failed; r = next++) {
      try {
        build_row(r);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

GridFunction IntegralOperator::apply(const GridFunction& f) const {
  if (f.resolution() != n_ || !std::equal(f.breakpoint_nodes().begin(), f.breakpoint_nodes().end(),
                                          breaks_.begin(), breaks_.end())) {
    throw std::invalid_argument("grid function does not match the operator's grid");
  }
  const std::vector<double> u = f.unknowns();
  std::vector<double> out(m_);
  for (std::size_t r = 0; r < m_; ++r) {
    const double* row = &w_[r * m_];
    double acc = a_[r];
    for (std::size_t c = 0; c < m_; ++c) acc += row[c] * u[c];
    if (!std::isfinite(acc)) {
      throw DiagnosticError("non-finite operator value at alpha = " +
                            std::to_string(static_cast<double>(r <= n_ ? r : breaks_[r - n_ - 1]) / n_));
    }
    out[r] = acc;
  }
  GridFunction g(n_, breaks_);
  g.set_unknowns(out);
  return g;
}

GridFunction IntegralOperator::constant_term() const {
  GridFunction g(n_, breaks_);
  g.set_unknowns(a_);
  return g;
}

double IntegralOperator::max_row_sum() const {
  double best = 0.0;
  for (std::size_t r = 0; r < m_; ++r) {
    double sum = 0.0;
    for (std::size_t c = 0; c < m_; ++c) sum += w_[r * m_ + c];
    best = std::max(best, sum);
  }
  return best;
}

GridFunction apply_operator(const GridFunction& f, const AdaptivePolicy& policy, const CostCoefficient& coeffs) {
  return IntegralOperator(policy, coeffs, f.resolution()).apply(f);
}

SolveResult solve_fixed_point(const IntegralOperator& op, double tol, int max_iter) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (max_iter < 1) throw std::invalid_argument("max_iter must be positive");
  SolveResult result{op.constant_term(), 0.0, 0, {}};
  for (int it = 1; it <= max_iter; ++it) {
    GridFunction next = op.apply(result.f);
    const auto a = next.unknowns();
    const auto b = result.f.unknowns();
    double change = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) change = std::max(change, std::abs(a[i] - b[i]));
    result.f = std::move(next);
    result.history.push_back(change);
    result.iterations = it;
    result.residual = change;
    if (change < tol) return result;
  }
  std::ostringstream os;
  os << "fixed-point iteration did not reach tol " << tol << " in " << max_iter << " iterations; residuals:";
  const std::size_t shown = std::min<std::size_t>(result.history.size(), 10);
  for (std::size_t i = result.history.size() - shown; i < result.history.size(); ++i) {
    os << ' ' << result.history[i];
  }
  throw DiagnosticError(os.str());
}

SolveResult solve_fixed_point(const AdaptivePolicy& policy, const CostCoefficient& coeffs, std::size_t n, double tol,
                              int max_iter) {
  if (n < 100) throw std::invalid_argument("solver grid needs N >= 100");
  return solve_fixed_point(IntegralOperator(policy, coeffs, n), tol, max_iter);
}

EmpiricalCoefficient estimate_a_empirical(Method method, const SamplingScheme& scheme, Measure measure,
                                          std::size_t n, std::size_t trials, Rng& rng) {
  if (n < 1000) throw std::invalid_argument("empirical coefficients need n >= 1000");
  if (trials < 1000) throw std::invalid_argument("empirical coefficients need at least 1000 trials");
  if (method_arity(method) != scheme.segments()) {
    throw std::invalid_argument("method " + std::string(method_name(method)) + " cannot use sampling vector " +
                                scheme.to_string());
  }
  std::vector<Key> buf(n);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    fill_permutation(buf, rng);
    SampleSelection sel = sample_pivots(buf, scheme, layout_for(method), rng);
    PartitionOutcome out = partition_with(method, buf, sel.pivots);
    const double x = static_cast<double>(measure_of(sel.tally + out.tally, measure)) / static_cast<double>(n);
    sum += x;
    sum_sq += x * x;
  }
  const auto t = static_cast<double>(trials);
  const double mean = sum / t;
  const double var = std::max(0.0, (sum_sq - t * mean * mean) / (t - 1.0));
  return {mean, std::sqrt(var / t)};
}

void curve_export(const GridFunction& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out.precision(12);
  out << "alpha,value\n";
  for (std::size_t i = 0; i <= f.resolution(); ++i) out << f.alpha(i) << ',' << f.values()[i] << '\n';
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace qsl
