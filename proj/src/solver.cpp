#include "betaot/solver.hpp"

#include <cmath>
#include <limits>
#include <tuple>
#include <sstream>
#include <vector>

#include "betaot/errors.hpp"
#include "betaot/projections.hpp"

namespace betaot {
namespace {

void require_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    std::ostringstream os;
    os << "lambda must be finite and > 0, got " << lambda;
    throw InputError(os.str());
  }
}

void finish(TransportPlan& plan, const CostMatrix& cost) {
  plan.value = transport_value(plan.pi, cost);
  std::tie(plan.row_residual_l1, plan.col_residual_l1) = marginal_residuals(plan.pi);
}

}  // namespace

Matrix init_dual(const CostMatrix& cost, double lambda) {
  require_lambda(lambda);
  Matrix theta(cost.rows(), cost.cols());
  const auto g = cost.gamma().values();
  auto t = theta.values();
  for (std::size_t k = 0; k < g.size(); ++k) t[k] = -g[k] / lambda;
  return theta;
}

double budget_bound(double z, double beta, double lambda, std::size_t m, std::size_t n) {
  const double e = beta - 1.0;
  const double denom = std::pow(1.0 / static_cast<double>(m), e) +
                       std::pow(1.0 / static_cast<double>(n), e);
  return ((z / lambda) * e - 1.0) / denom;
}

IterationBudget iteration_budget(double z, const SolverConfig& cfg, std::size_t m, std::size_t n) {
  require_lambda(cfg.lambda);
  if (!(cfg.beta > 1.0)) throw DomainError("iteration_budget: beta must be > 1");
  if (m == 0 || n == 0) throw InputError("iteration_budget: empty problem");
  const double floor_z = cfg.lambda / (cfg.beta - 1.0);
  if (!(z > floor_z)) {
    std::ostringstream os;
    os << "outlier tolerance z = " << z << " must exceed lambda/(beta-1) = " << floor_z;
    throw InfeasibleError(os.str());
  }
  IterationBudget b;
  b.t_max_real = budget_bound(z, cfg.beta, cfg.lambda, m, n);
  if (!(b.t_max_real < 1e15)) {
    std::ostringstream os;
    os << "iteration budget " << b.t_max_real << " is impractically large; scale the costs down";
    throw InfeasibleError(os.str());
  }
  // Largest integer strictly below the bound: an exact integer k gives k - 1.
  b.budget = static_cast<long>(std::ceil(b.t_max_real)) - 1;
  if (b.budget < 1) {
    std::ostringstream os;
    os << "iteration budget exhausted (bound " << b.t_max_real
       << " admits no sweep); scale the costs up (auto-scale) or lower lambda";
    throw InfeasibleError(os.str());
  }
  return b;
}

TransportPlan robust_solve(const CostMatrix& cost, const SolverConfig& cfg) {
  const Potential pot = Potential::beta(cfg.beta);
  require_lambda(cfg.lambda);
  if (cost.rows() == 0 || cost.cols() == 0) throw InputError("robust_solve: empty cost matrix");

  long sweeps = 0;
  bool guarantee = false;
  if (cfg.iterations) {
    sweeps = *cfg.iterations;
    if (sweeps < 1) throw InputError("robust_solve: iteration count must be >= 1");
    if (cfg.z) guarantee = sweeps <= iteration_budget(*cfg.z, cfg, cost.rows(), cost.cols()).budget;
  } else if (cfg.z) {
    sweeps = iteration_budget(*cfg.z, cfg, cost.rows(), cost.cols()).budget;
    guarantee = true;
  } else {
    throw InputError("robust_solve: give an iteration count or an outlier tolerance z");
  }

  DualState state = DualState::from_tilde(init_dual(cost, cfg.lambda), pot, cfg.exec);
  std::vector<double> tau, sigma, scratch;
  for (long t = 0; t < sweeps; ++t) {
    truncated_row_step(state, pot, tau, scratch, cfg.exec);
    truncated_col_step(state, pot, sigma, scratch, cfg.exec);
  }

  TransportPlan plan;
  plan.pi = Matrix(cost.rows(), cost.cols());
  kernels::table(cfg.exec).psi_prime_map(state.theta_star, pot, plan.pi);
  plan.iterations_run = sweeps;
  plan.robust_guarantee = guarantee;
  finish(plan, cost);
  return plan;
}

TransportPlan robust_solve_source_outliers(const CostMatrix& cost, const SolverConfig& cfg) {
  TransportPlan plan = robust_solve(cost.transposed(), cfg);
  plan.pi = plan.pi.transposed();
  finish(plan, cost);
  return plan;
}

TransportPlan nasa_solve(const CostMatrix& cost, double lambda, const Potential& pot, double tol,
                         long max_iter, Exec exec) {
  if (!pot.is_cofinite())
    throw UnsupportedError("nasa_solve: " + pot.name() +
                           " is not cofinite; its conjugate domain is bounded, use robust_solve");
  require_lambda(lambda);
  if (cost.rows() == 0 || cost.cols() == 0) throw InputError("nasa_solve: empty cost matrix");

  constexpr double kInnerTol = 1e-12;
  constexpr int kInnerCap = 100;
  const auto& k = kernels::table(exec);
  const std::size_t m = cost.rows(), n = cost.cols();
  const double clamp = pot.nonneg_clamp();
  const double no_clamp = -std::numeric_limits<double>::infinity();

  DualState state = DualState::from_tilde(init_dual(cost, lambda), pot, exec);
  Matrix work(m, n), work_next(m, n);
  std::vector<double> total_r(m), step_r(m), total_c(n), step_c(n);

  // Newton on sum_j psi'(theta*_ij - tau_i) = 1/m from tau = 0, on a copy.
  auto inner = [&](bool rows, std::vector<double>& total, std::vector<double>& step) {
    work = state.theta_star;
    std::fill(total.begin(), total.end(), 0.0);
    const double target = 1.0 / static_cast<double>(rows ? m : n);
    for (int it = 0; it < kInnerCap; ++it) {
      double worst = 0.0;
      if (rows) {
        k.row_newton(work, pot, target, kDenominatorGuard, step);
        k.sub_rows_clamp(work, work_next, step, no_clamp);
      } else {
        k.col_newton(work, pot, target, kDenominatorGuard, step);
        k.sub_cols_clamp(work, work_next, step, no_clamp);
      }
      for (std::size_t a = 0; a < total.size(); ++a) {
        total[a] += step[a];
        worst = std::max(worst, std::abs(step[a]) / std::max(1.0, std::abs(total[a])));
      }
      if (!std::isfinite(worst)) throw NumericalError("nasa_solve: Newton step diverged");
      if (worst <= kInnerTol) break;
    }
  };

  TransportPlan plan;
  plan.pi = Matrix(m, n);
  for (long t = 1; t <= max_iter; ++t) {
    inner(true, total_r, step_r);
    k.sub_rows_clamp(state.theta_tilde, state.theta_star, total_r, clamp);
    inner(false, total_c, step_c);
    k.sub_cols_clamp(state.theta_tilde, state.theta_star, total_c, clamp);

    k.psi_prime_map(state.theta_star, pot, plan.pi);
    const auto [r, c] = marginal_residuals(plan.pi);
    plan.iterations_run = t;
    if (r + c <= tol) {
      plan.converged = true;
      break;
    }
  }
  finish(plan, cost);
  return plan;
}

double transport_value(const Matrix& pi, const CostMatrix& cost) {
  if (pi.rows() != cost.rows() || pi.cols() != cost.cols())
    throw InputError("transport_value: plan and cost shapes differ");
  const auto p = pi.values();
  const auto g = cost.gamma().values();
  double s = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) s += p[k] * g[k];
  return s;
}

std::pair<double, double> marginal_residuals(const Matrix& pi) {
  const std::size_t m = pi.rows(), n = pi.cols();
  if (m == 0 || n == 0) return {0.0, 0.0};
  std::vector<double> col(n, 0.0);
  double row_res = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto r = pi.row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      s += r[j];
      col[j] += r[j];
    }
    row_res += std::abs(s - 1.0 / static_cast<double>(m));
  }
  double col_res = 0.0;
  for (double c : col) col_res += std::abs(c - 1.0 / static_cast<double>(n));
  return {row_res, col_res};
}

}  // namespace betaot
