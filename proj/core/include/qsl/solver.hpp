#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "qsl/rng.hpp"
#include "qsl/types.hpp"

namespace qsl {

/// Piecewise-linear function on the grid alpha_i = i / N.
///
/// Interior policy breakpoints are snapped to grid nodes. At such a node the
/// function may jump: values()[i] is the limit from the right (the node
/// belongs to the interval on its right) and a separate left limit is kept,
/// so interpolation never crosses a breakpoint.
class GridFunction {
 public:
  /// Constant zero on N cells with the given interior breakpoint nodes.
  GridFunction(std::size_t n, std::vector<std::size_t> breakpoint_nodes = {});

  /// Samples fn at every node; left limits at breakpoint nodes come from
  /// left_fn (defaults to fn).
  static GridFunction sample(std::size_t n, std::vector<std::size_t> breakpoint_nodes,
                             const std::function<double(double)>& fn,
                             const std::function<double(double)>& left_fn = {});

  std::size_t resolution() const { return n_; }
  double alpha(std::size_t i) const { return static_cast<double>(i) / static_cast<double>(n_); }
  std::span<const std::size_t> breakpoint_nodes() const { return breaks_; }
  bool is_breakpoint(std::size_t node) const;

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  /// Left limit at node i (equals values()[i] away from breakpoints).
  double left_limit(std::size_t node) const;
  void set_left_limit(std::size_t node, double value);

  /// Linear interpolation inside the cell holding alpha.
  double operator()(double alpha) const;

  /// Exact integral of the piecewise-linear interpolant over [0, 1].
  double integral() const;

  /// Node values followed by the left limits of breakpoint nodes.
  std::vector<double> unknowns() const;
  void set_unknowns(std::span<const double> u);
  std::size_t unknown_count() const { return n_ + 1 + breaks_.size(); }
  /// Index into unknowns() of the value used at `node` when approached from the left.
  std::size_t left_unknown(std::size_t node) const;

 private:
  std::size_t n_;
  std::vector<std::size_t> breaks_;
  std::vector<double> values_;
  std::vector<double> left_;
};

/// Snaps interior policy breakpoints to the nearest nodes of an N-cell grid.
/// Throws std::invalid_argument when two breakpoints collide or one lands on
/// 0 or 1.
std::vector<std::size_t> snap_breakpoints(const AdaptivePolicy& policy, std::size_t n);

/// Exponents of the aggregated left and right sample masses of segment l:
/// left[l] = sum_{r<l}(t_r+1) - 1 and right[l] = sum_{r>l}(t_r+1) - 1.
struct TStops {
  std::vector<int> left;
  std::vector<int> right;
};
TStops tstops(const SamplingScheme& scheme);

/// Leading per-round cost coefficient for each policy interval.
struct CostCoefficient {
  std::vector<double> a;

  /// Closed-form coefficients; throws std::invalid_argument when a segment
  /// has none for the measure.
  static CostCoefficient closed_form(const AdaptivePolicy& policy, Measure measure);
  static CostCoefficient constant(const AdaptivePolicy& policy, double a);
};

/// Discretized right-hand side of the fixed-quantile integral equation,
/// f = a + K f, for one policy on one grid.
///
/// Kernels are integrated against the piecewise-linear basis with Gauss-
/// Legendre rules per cell (product integration); the weights are computed
/// once and each application is a matrix-vector product.
class IntegralOperator {
 public:
  IntegralOperator(const AdaptivePolicy& policy, const CostCoefficient& coeffs, std::size_t n,
                   unsigned threads = 0);

  std::size_t resolution() const { return n_; }
  std::span<const std::size_t> breakpoint_nodes() const { return breaks_; }

  GridFunction apply(const GridFunction& f) const;
  GridFunction zero() const { return GridFunction(n_, breaks_); }
  /// a(alpha) on the grid (the operator applied to zero).
  GridFunction constant_term() const;
  /// Largest row sum of the kernel weights (an upper bound on the contraction factor).
  double max_row_sum() const;

 private:
  std::size_t n_;
  std::vector<std::size_t> breaks_;
  std::size_t m_;
  std::vector<double> a_;
  std::vector<double> w_;  // m_ x m_, row-major
};

GridFunction apply_operator(const GridFunction& f, const AdaptivePolicy& policy, const CostCoefficient& coeffs);

struct SolveResult {
  GridFunction f;
  /// Sup-norm change of the last iteration.
  double residual = 0.0;
  int iterations = 0;
  std::vector<double> history;
};

/// Iterates f <- a + K f from f = a until the sup-norm change drops below
/// tol. Throws DiagnosticError carrying the residual history when max_iter
/// is reached or a value turns non-finite.
SolveResult solve_fixed_point(const AdaptivePolicy& policy, const CostCoefficient& coeffs, std::size_t n = 400,
                              double tol = 1e-9, int max_iter = 2000);
SolveResult solve_fixed_point(const IntegralOperator& op, double tol = 1e-9, int max_iter = 2000);

struct EmpiricalCoefficient {
  double mean;
  double std_error;
};

/// Mean first-round cost over n for one (method, scheme) pair, sampling
/// included, on fresh random permutations. Requires n >= 1000 and
/// trials >= 1000.
EmpiricalCoefficient estimate_a_empirical(Method method, const SamplingScheme& scheme, Measure measure,
                                          std::size_t n, std::size_t trials, Rng& rng);

/// Writes "alpha,value" and one row per grid node.
void curve_export(const GridFunction& f, const std::string& path);

}  // namespace qsl
