#include "betaot/projections.hpp"

#include <algorithm>
#include <sstream>

#include "betaot/errors.hpp"

namespace betaot {
namespace {

void require_in_domain(const Matrix& theta_star, const Potential& pot, const char* what) {
  const double lo = pot.domain_lower_dual();
  for (double t : theta_star.values()) {
    if (t < lo) {
      std::ostringstream os;
      os << what << ": theta_star entry " << t << " is below dom psi (" << lo
         << "); clamp it first";
      throw DomainError(os.str());
    }
  }
}

}  // namespace

DualState DualState::from_tilde(Matrix theta_tilde, const Potential& pot, Exec exec) {
  DualState s{std::move(theta_tilde), Matrix()};
  s.theta_star = Matrix(s.theta_tilde.rows(), s.theta_tilde.cols());
  kernels::table(exec).clamp(s.theta_tilde, s.theta_star, pot.nonneg_clamp());
  return s;
}

Matrix clamp_dual(const Matrix& theta_tilde, const Potential& pot, Exec exec) {
  Matrix out(theta_tilde.rows(), theta_tilde.cols());
  kernels::table(exec).clamp(theta_tilde, out, pot.nonneg_clamp());
  return out;
}

std::vector<double> row_newton_decrement(const Matrix& theta_star, const Potential& pot,
                                         Exec exec) {
  require_in_domain(theta_star, pot, "row_newton_decrement");
  std::vector<double> tau(theta_star.rows());
  const double target = 1.0 / static_cast<double>(theta_star.rows());
  kernels::table(exec).row_newton(theta_star, pot, target, kDenominatorGuard, tau);
  return tau;
}

std::vector<double> col_newton_decrement(const Matrix& theta_star, const Potential& pot,
                                         Exec exec) {
  require_in_domain(theta_star, pot, "col_newton_decrement");
  std::vector<double> sigma(theta_star.cols());
  const double target = 1.0 / static_cast<double>(theta_star.cols());
  kernels::table(exec).col_newton(theta_star, pot, target, kDenominatorGuard, sigma);
  return sigma;
}

std::vector<double> truncate_row_decrement(std::vector<double> tau, const Matrix& theta_star,
                                           const Potential& pot, Exec exec) {
  if (tau.size() != theta_star.rows()) throw InputError("truncate_row_decrement: size mismatch");
  std::vector<double> hat(theta_star.rows());
  kernels::table(exec).row_max(theta_star, hat);
  const double cap = pot.phi_prime(1.0 / static_cast<double>(theta_star.rows()));
  for (std::size_t i = 0; i < tau.size(); ++i) tau[i] = std::max(tau[i], hat[i] - cap);
  return tau;
}

std::vector<double> truncate_col_decrement(std::vector<double> sigma, const Matrix& theta_star,
                                           const Potential& pot, Exec exec) {
  if (sigma.size() != theta_star.cols()) throw InputError("truncate_col_decrement: size mismatch");
  std::vector<double> hat(theta_star.cols());
  kernels::table(exec).col_max(theta_star, hat);
  const double cap = pot.phi_prime(1.0 / static_cast<double>(theta_star.cols()));
  for (std::size_t j = 0; j < sigma.size(); ++j) sigma[j] = std::max(sigma[j], hat[j] - cap);
  return sigma;
}

Matrix apply_row(Matrix theta_tilde, const std::vector<double>& tau) {
  if (tau.size() != theta_tilde.rows()) throw InputError("apply_row: size mismatch");
  for (std::size_t i = 0; i < theta_tilde.rows(); ++i)
    for (double& t : theta_tilde.row(i)) t -= tau[i];
  return theta_tilde;
}

Matrix apply_col(Matrix theta_tilde, const std::vector<double>& sigma) {
  if (sigma.size() != theta_tilde.cols()) throw InputError("apply_col: size mismatch");
  for (std::size_t i = 0; i < theta_tilde.rows(); ++i) {
    auto r = theta_tilde.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) r[j] -= sigma[j];
  }
  return theta_tilde;
}

void truncated_row_step(DualState& state, const Potential& pot, std::vector<double>& tau,
                        std::vector<double>& scratch, Exec exec) {
  const auto& k = kernels::table(exec);
  const std::size_t m = state.rows();
  const double inv_m = 1.0 / static_cast<double>(m);
  tau.resize(m);
  scratch.resize(m);
  k.row_newton(state.theta_star, pot, inv_m, kDenominatorGuard, tau);
  k.row_max(state.theta_star, scratch);
  const double cap = pot.phi_prime(inv_m);
  for (std::size_t i = 0; i < m; ++i) tau[i] = std::max(tau[i], scratch[i] - cap);
  k.sub_rows_clamp(state.theta_tilde, state.theta_star, tau, pot.nonneg_clamp());
}

void truncated_col_step(DualState& state, const Potential& pot, std::vector<double>& sigma,
                        std::vector<double>& scratch, Exec exec) {
  const auto& k = kernels::table(exec);
  const std::size_t n = state.cols();
  const double inv_n = 1.0 / static_cast<double>(n);
  sigma.resize(n);
  scratch.resize(n);
  k.col_newton(state.theta_star, pot, inv_n, kDenominatorGuard, sigma);
  k.col_max(state.theta_star, scratch);
  const double cap = pot.phi_prime(inv_n);
  for (std::size_t j = 0; j < n; ++j) sigma[j] = std::max(sigma[j], scratch[j] - cap);
  k.sub_cols_clamp(state.theta_tilde, state.theta_star, sigma, pot.nonneg_clamp());
}

}  // namespace betaot
