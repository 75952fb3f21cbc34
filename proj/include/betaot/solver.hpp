#pragma once

#include <cstddef>
#include <optional>
#include <utility>

#include "betaot/cost_matrix.hpp"
#include "betaot/kernels.hpp"
#include "betaot/matrix.hpp"
#include "betaot/potential.hpp"

namespace betaot {

struct SolverConfig {
  double beta = 1.2;
  double lambda = 2.0;
  /// Explicit number of full row+column sweeps. When unset, derived from z.
  std::optional<long> iterations;
  /// Outlier distance tolerance; must exceed lambda / (beta - 1).
  std::optional<double> z;
  double sinkhorn_tol = 1e-9;
  long max_iter = 10000;
  double eps_zero = 1e-12;
  Exec exec = Exec::Serial;
};

/// Largest sweep count that keeps mass off every column at cost >= z.
struct IterationBudget {
  double t_max_real = 0.0;  ///< bound the sweep count must stay strictly below
  long budget = 0;          ///< largest integer strictly below t_max_real
};

struct TransportPlan {
  Matrix pi;
  double value = 0.0;  ///< <pi, gamma>
  double row_residual_l1 = 0.0;
  double col_residual_l1 = 0.0;
  long iterations_run = 0;
  bool converged = false;      ///< residual tolerance met (iterative solvers)
  bool robust_guarantee = false;  ///< run stayed within the zero-mass budget for cfg.z
  bool log_domain = false;     ///< Sinkhorn fell back to log-domain updates
};

/// theta = -gamma / lambda. Throws InputError unless lambda is finite and > 0.
Matrix init_dual(const CostMatrix& cost, double lambda);

/// Right-hand side of the zero-mass condition,
///   ((z/lambda)(beta-1) - 1) / ((1/m)^(beta-1) + (1/n)^(beta-1)),
/// with no feasibility checks.
double budget_bound(double z, double beta, double lambda, std::size_t m, std::size_t n);

/// Throws InfeasibleError when z <= lambda/(beta-1) or when no positive
/// integer fits under the bound (rescale the costs, see auto_scale).
IterationBudget iteration_budget(double z, const SolverConfig& cfg, std::size_t m, std::size_t n);

/// Truncated single-step dual Newton scaling for the beta-potential.
///
/// Runs the init (theta = -gamma/lambda, clamp) and then exactly T sweeps of
/// {row decrement, truncate, subtract, clamp, column decrement, truncate,
/// subtract, clamp}. T comes from cfg.iterations or, if that is unset, from
/// iteration_budget(cfg.z). With T within the budget every column whose
/// costs are all >= z receives exactly zero mass. Plan entries lie in
/// [0, 1/n] and marginals are generally not met; residuals are reported.
TransportPlan robust_solve(const CostMatrix& cost, const SolverConfig& cfg);

/// robust_solve on the transposed cost, transposed back, so source-side
/// (row) outliers get the zero-mass treatment.
TransportPlan robust_solve_source_outliers(const CostMatrix& cost, const SolverConfig& cfg);

/// Plain Sinkhorn scaling on exp(-gamma/lambda) with uniform marginals.
/// Stops when row+column L1 residual <= tol or after max_iter sweeps.
/// Throws NumericalError when the kernel underflows to a zero row/column.
TransportPlan sinkhorn_solve(const CostMatrix& cost, double lambda, double tol, long max_iter,
                             Exec exec = Exec::Serial);

/// Same fixed point computed with log-sum-exp updates on the potentials.
TransportPlan sinkhorn_solve_log(const CostMatrix& cost, double lambda, double tol, long max_iter,
                                 Exec exec = Exec::Serial);

/// sinkhorn_solve, retried in the log domain if the kernel underflows.
TransportPlan sinkhorn_solve_stable(const CostMatrix& cost, double lambda, double tol,
                                    long max_iter, Exec exec = Exec::Serial);

/// Alternate scaling with Newton inner loops run to convergence (inner
/// tolerance 1e-12, at most 100 steps). Cofinite generators only; Beta
/// throws UnsupportedError.
TransportPlan nasa_solve(const CostMatrix& cost, double lambda, const Potential& pot, double tol,
                         long max_iter, Exec exec = Exec::Serial);

/// Frobenius inner product, row-major summation.
double transport_value(const Matrix& pi, const CostMatrix& cost);

/// (sum_i |row_i - 1/m|, sum_j |col_j - 1/n|) for an m x n plan.
std::pair<double, double> marginal_residuals(const Matrix& pi);

}  // namespace betaot
