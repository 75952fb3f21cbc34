#pragma once

#include <cstddef>
#include <vector>

#include "betaot/kernels.hpp"
#include "betaot/matrix.hpp"
#include "betaot/potential.hpp"

namespace betaot {

/// Newton denominators below this are treated as zero and the decrement is 0.
inline constexpr double kDenominatorGuard = 1e-12;

/// Running dual `theta_tilde` and its clamp `theta_star = max(phi'(0), theta_tilde)`.
struct DualState {
  Matrix theta_tilde;
  Matrix theta_star;

  /// Takes ownership of theta_tilde and builds the clamped image.
  static DualState from_tilde(Matrix theta_tilde, const Potential& pot,
                              Exec exec = Exec::Serial);

  std::size_t rows() const noexcept { return theta_tilde.rows(); }
  std::size_t cols() const noexcept { return theta_tilde.cols(); }
};

/// Row (tau) and column (sigma) Newton decrements of the last sweep.
struct NewtonDecrements {
  std::vector<double> tau;
  std::vector<double> sigma;
};

/// Projection onto the nonnegative orthant in dual coordinates:
/// element-wise max with phi'(0). Idempotent.
Matrix clamp_dual(const Matrix& theta_tilde, const Potential& pot, Exec exec = Exec::Serial);

/// One Newton step of the row-sum subproblem sum_j psi'(theta_ij - tau_i) = 1/m,
/// started at tau = 0. Rows whose psi'' sum is below kDenominatorGuard get 0.
/// Throws DomainError if theta_star has entries below dom psi.
std::vector<double> row_newton_decrement(const Matrix& theta_star, const Potential& pot,
                                         Exec exec = Exec::Serial);
std::vector<double> col_newton_decrement(const Matrix& theta_star, const Potential& pot,
                                         Exec exec = Exec::Serial);

/// tau_i <- max(tau_i, max_j theta_star_ij - phi'(1/m)); after the update
/// every row entry of the dual is at most phi'(1/m), i.e. plan entries <= 1/m.
/// Uses theta_star as it is before the row update.
std::vector<double> truncate_row_decrement(std::vector<double> tau, const Matrix& theta_star,
                                           const Potential& pot, Exec exec = Exec::Serial);
std::vector<double> truncate_col_decrement(std::vector<double> sigma, const Matrix& theta_star,
                                           const Potential& pot, Exec exec = Exec::Serial);

/// theta_ij - tau_i. Re-clamping is left to the caller.
Matrix apply_row(Matrix theta_tilde, const std::vector<double>& tau);
/// theta_ij - sigma_j.
Matrix apply_col(Matrix theta_tilde, const std::vector<double>& sigma);

/// One truncated single-step row projection followed by the clamp, in place.
/// `tau` receives the decrement that was applied.
void truncated_row_step(DualState& state, const Potential& pot, std::vector<double>& tau,
                        std::vector<double>& scratch, Exec exec = Exec::Serial);
void truncated_col_step(DualState& state, const Potential& pot, std::vector<double>& sigma,
                        std::vector<double>& scratch, Exec exec = Exec::Serial);

}  // namespace betaot
