#pragma once

#include <cstddef>
#include <span>

#include "betaot/matrix.hpp"
#include "betaot/potential.hpp"

namespace betaot {

/// Execution backend for the data-parallel inner loops.
enum class Exec { Serial, Parallel };

namespace kernels {

// Every kernel accumulates in the same index order in both backends, so the
// serial and OpenMP results are bit-identical. The serial backend is the
// reference the parity tests compare against.

/// Function table shared by both backends.
struct Table {
  /// tau[i] = (sum_j psi'(ts_ij) - target) / sum_j psi''(ts_ij), or 0 when the
  /// denominator is below eps_den.
  void (*row_newton)(const Matrix& ts, const Potential& pot, double target, double eps_den,
                     std::span<double> tau);
  /// Column mirror of row_newton; sums run over i in increasing order.
  void (*col_newton)(const Matrix& ts, const Potential& pot, double target, double eps_den,
                     std::span<double> sigma);
  void (*row_max)(const Matrix& m, std::span<double> out);
  void (*col_max)(const Matrix& m, std::span<double> out);
  /// tt_ij -= tau_i, then ts_ij = max(clamp, tt_ij).
  void (*sub_rows_clamp)(Matrix& tt, Matrix& ts, std::span<const double> tau, double clamp);
  /// tt_ij -= sigma_j, then ts_ij = max(clamp, tt_ij).
  void (*sub_cols_clamp)(Matrix& tt, Matrix& ts, std::span<const double> sigma, double clamp);
  void (*clamp)(const Matrix& src, Matrix& dst, double clamp);
  void (*psi_prime_map)(const Matrix& ts, const Potential& pot, Matrix& out);
  /// out_ij = ||x_i - y_j||^2 for row-major point arrays of dimension d.
  void (*sq_euclidean)(std::span<const double> x, std::span<const double> y, std::size_t d,
                       Matrix& out);
  /// out_i = sum_j k_ij v_j
  void (*matvec)(const Matrix& k, std::span<const double> v, std::span<double> out);
  /// out_j = sum_i k_ij u_i
  void (*matvec_t)(const Matrix& k, std::span<const double> u, std::span<double> out);
  /// out_i = log sum_j exp((g_j - c_ij) / lambda), max-shifted.
  void (*lse_rows)(const Matrix& c, std::span<const double> g, double lambda,
                   std::span<double> out);
  /// out_j = log sum_i exp((f_i - c_ij) / lambda), max-shifted.
  void (*lse_cols)(const Matrix& c, std::span<const double> f, double lambda,
                   std::span<double> out);
};

const Table& serial();
const Table& parallel();
const Table& table(Exec exec);

/// True when the library was compiled with OpenMP.
bool openmp_enabled() noexcept;
int max_threads() noexcept;

}  // namespace kernels
}  // namespace betaot
