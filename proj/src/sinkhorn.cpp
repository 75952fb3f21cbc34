#include <cmath>
#include <tuple>
#include <limits>
#include <sstream>
#include <vector>

#include "betaot/errors.hpp"
#include "betaot/solver.hpp"

namespace betaot {
namespace {

void check_args(const CostMatrix& cost, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InputError("sinkhorn: lambda must be > 0");
  if (cost.rows() == 0 || cost.cols() == 0) throw InputError("sinkhorn: empty cost matrix");
}

[[noreturn]] void underflow(const char* where, std::size_t index, double lambda) {
  std::ostringstream os;
  os << "sinkhorn: kernel exp(-gamma/lambda) underflowed to zero in " << where << ' ' << index
     << " at lambda = " << lambda << "; use a larger lambda, rescale the costs, or the log domain";
  throw NumericalError(os.str());
}

void finish(TransportPlan& plan, const CostMatrix& cost, double tol) {
  plan.value = transport_value(plan.pi, cost);
  std::tie(plan.row_residual_l1, plan.col_residual_l1) = marginal_residuals(plan.pi);
  plan.converged = plan.row_residual_l1 + plan.col_residual_l1 <= tol;
}

}  // namespace

TransportPlan sinkhorn_solve(const CostMatrix& cost, double lambda, double tol, long max_iter,
                             Exec exec) {
  check_args(cost, lambda);
  const auto& k = kernels::table(exec);
  const std::size_t m = cost.rows(), n = cost.cols();
  const double a = 1.0 / static_cast<double>(m), b = 1.0 / static_cast<double>(n);

  Matrix kernel(m, n);
  {
    const auto g = cost.gamma().values();
    auto kv = kernel.values();
    for (std::size_t e = 0; e < g.size(); ++e) {
      kv[e] = std::exp(-g[e] / lambda);
      // Any flushed entry would be rescaled by u, v into a wrong plan entry.
      if (kv[e] < std::numeric_limits<double>::min()) underflow("entry", e, lambda);
    }
  }

  std::vector<double> u(m, 1.0), v(n, 1.0), kv(m), ktu(n);
  k.matvec(kernel, v, kv);
  long it = 0;
  for (; it < max_iter;) {
    for (std::size_t i = 0; i < m; ++i) {
      if (!(kv[i] > 0.0)) underflow("row", i, lambda);
      u[i] = a / kv[i];
    }
    k.matvec_t(kernel, u, ktu);
    for (std::size_t j = 0; j < n; ++j) {
      if (!(ktu[j] > 0.0) || !std::isfinite(ktu[j])) underflow("column", j, lambda);
      v[j] = b / ktu[j];
    }
    ++it;
    k.matvec(kernel, v, kv);
    // Columns are exact after the v update; the row error is what remains.
    double row_res = 0.0;
    for (std::size_t i = 0; i < m; ++i) row_res += std::abs(u[i] * kv[i] - a);
    if (!std::isfinite(row_res)) throw NumericalError("sinkhorn: non-finite scaling");
    if (row_res <= tol) break;
  }

  TransportPlan plan;
  plan.pi = Matrix(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    const auto kr = kernel.row(i);
    auto pr = plan.pi.row(i);
    for (std::size_t j = 0; j < n; ++j) pr[j] = u[i] * kr[j] * v[j];
  }
  plan.iterations_run = it;
  finish(plan, cost, tol);
  return plan;
}

TransportPlan sinkhorn_solve_log(const CostMatrix& cost, double lambda, double tol, long max_iter,
                                 Exec exec) {
  check_args(cost, lambda);
  const auto& k = kernels::table(exec);
  const std::size_t m = cost.rows(), n = cost.cols();
  const double log_a = -std::log(static_cast<double>(m));
  const double log_b = -std::log(static_cast<double>(n));
  const double a = 1.0 / static_cast<double>(m);

  // pi_ij = exp((f_i + g_j - gamma_ij) / lambda)
  std::vector<double> f(m, 0.0), g(n, 0.0), lse_r(m), lse_c(n);
  k.lse_rows(cost.gamma(), g, lambda, lse_r);
  long it = 0;
  for (; it < max_iter;) {
    for (std::size_t i = 0; i < m; ++i) f[i] = lambda * (log_a - lse_r[i]);
    k.lse_cols(cost.gamma(), f, lambda, lse_c);
    for (std::size_t j = 0; j < n; ++j) g[j] = lambda * (log_b - lse_c[j]);
    ++it;
    k.lse_rows(cost.gamma(), g, lambda, lse_r);
    double row_res = 0.0;
    for (std::size_t i = 0; i < m; ++i) row_res += std::abs(std::exp(f[i] / lambda + lse_r[i]) - a);
    if (!std::isfinite(row_res)) throw NumericalError("sinkhorn (log domain): non-finite potentials");
    if (row_res <= tol) break;
  }

  TransportPlan plan;
  plan.pi = Matrix(m, n);
  plan.log_domain = true;
  for (std::size_t i = 0; i < m; ++i) {
    const auto cr = cost.gamma().row(i);
    auto pr = plan.pi.row(i);
    for (std::size_t j = 0; j < n; ++j) pr[j] = std::exp((f[i] + g[j] - cr[j]) / lambda);
  }
  plan.iterations_run = it;
  finish(plan, cost, tol);
  return plan;
}

TransportPlan sinkhorn_solve_stable(const CostMatrix& cost, double lambda, double tol,
                                    long max_iter, Exec exec) {
  try {
    return sinkhorn_solve(cost, lambda, tol, max_iter, exec);
  } catch (const NumericalError&) {
    return sinkhorn_solve_log(cost, lambda, tol, max_iter, exec);
  }
}

}  // namespace betaot
