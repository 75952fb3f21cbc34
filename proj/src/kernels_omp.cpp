#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "betaot/kernels.hpp"

// Row kernels split rows across threads. Column kernels split the columns
// into fixed blocks and walk every row inside a block, so each column is
// still accumulated in increasing row order.

namespace betaot::kernels {
namespace {

constexpr std::size_t kBlock = 128;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::ptrdiff_t blocks_of(std::size_t n) { return static_cast<std::ptrdiff_t>((n + kBlock - 1) / kBlock); }

void row_newton(const Matrix& ts, const Potential& pot, double target, double eps_den,
                std::span<double> tau) {
  const auto m = static_cast<std::ptrdiff_t>(ts.rows());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < m; ++i) {
    double num = 0.0, den = 0.0;
    for (double t : ts.row(i)) {
      const auto d = pot.psi_derivs(t);
      num += d.first;
      den += d.second;
    }
    tau[i] = den < eps_den ? 0.0 : (num - target) / den;
  }
}

void col_newton(const Matrix& ts, const Potential& pot, double target, double eps_den,
                std::span<double> sigma) {
  const std::size_t n = ts.cols();
  const auto nb = blocks_of(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < nb; ++b) {
    const std::size_t lo = b * kBlock, hi = std::min(n, lo + kBlock);
    std::array<double, kBlock> num{}, den{};
    for (std::size_t i = 0; i < ts.rows(); ++i) {
      const auto r = ts.row(i);
      for (std::size_t j = lo; j < hi; ++j) {
        const auto d = pot.psi_derivs(r[j]);
        num[j - lo] += d.first;
        den[j - lo] += d.second;
      }
    }
    for (std::size_t j = lo; j < hi; ++j)
      sigma[j] = den[j - lo] < eps_den ? 0.0 : (num[j - lo] - target) / den[j - lo];
  }
}

void row_max(const Matrix& m, std::span<double> out) {
  const auto rows = static_cast<std::ptrdiff_t>(m.rows());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < rows; ++i) {
    const auto r = m.row(i);
    out[i] = *std::max_element(r.begin(), r.end());
  }
}

void col_max(const Matrix& m, std::span<double> out) {
  const std::size_t n = m.cols();
  const auto nb = blocks_of(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < nb; ++b) {
    const std::size_t lo = b * kBlock, hi = std::min(n, lo + kBlock);
    for (std::size_t j = lo; j < hi; ++j) out[j] = kNegInf;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      const auto r = m.row(i);
      for (std::size_t j = lo; j < hi; ++j) out[j] = std::max(out[j], r[j]);
    }
  }
}

void sub_rows_clamp(Matrix& tt, Matrix& ts, std::span<const double> tau, double clamp) {
  const auto rows = static_cast<std::ptrdiff_t>(tt.rows());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < rows; ++i) {
    auto a = tt.row(i);
    auto b = ts.row(i);
    for (std::size_t j = 0; j < a.size(); ++j) {
      a[j] -= tau[i];
      b[j] = std::max(clamp, a[j]);
    }
  }
}

void sub_cols_clamp(Matrix& tt, Matrix& ts, std::span<const double> sigma, double clamp) {
  const auto rows = static_cast<std::ptrdiff_t>(tt.rows());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < rows; ++i) {
    auto a = tt.row(i);
    auto b = ts.row(i);
    for (std::size_t j = 0; j < a.size(); ++j) {
      a[j] -= sigma[j];
      b[j] = std::max(clamp, a[j]);
    }
  }
}

void clamp(const Matrix& src, Matrix& dst, double lo) {
  const auto s = src.values();
  auto d = dst.values();
  const auto size = static_cast<std::ptrdiff_t>(s.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < size; ++k) d[k] = std::max(lo, s[k]);
}

void psi_prime_map(const Matrix& ts, const Potential& pot, Matrix& out) {
  const auto s = ts.values();
  auto d = out.values();
  const auto size = static_cast<std::ptrdiff_t>(s.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < size; ++k) d[k] = pot.psi_prime(s[k]);
}

void sq_euclidean(std::span<const double> x, std::span<const double> y, std::size_t d,
                  Matrix& out) {
  const auto rows = static_cast<std::ptrdiff_t>(out.rows());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < rows; ++i) {
    const double* xi = x.data() + i * d;
    auto r = out.row(i);
    for (std::size_t j = 0; j < out.cols(); ++j) {
      const double* yj = y.data() + j * d;
      double s = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        const double diff = xi[k] - yj[k];
        s += diff * diff;
      }
      r[j] = s;
    }
  }
}

void matvec(const Matrix& k, std::span<const double> v, std::span<double> out) {
  const auto rows = static_cast<std::ptrdiff_t>(k.rows());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < rows; ++i) {
    const auto r = k.row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < r.size(); ++j) s += r[j] * v[j];
    out[i] = s;
  }
}

void matvec_t(const Matrix& k, std::span<const double> u, std::span<double> out) {
  const std::size_t n = k.cols();
  const auto nb = blocks_of(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < nb; ++b) {
    const std::size_t lo = b * kBlock, hi = std::min(n, lo + kBlock);
    for (std::size_t j = lo; j < hi; ++j) out[j] = 0.0;
    for (std::size_t i = 0; i < k.rows(); ++i) {
      const auto r = k.row(i);
      for (std::size_t j = lo; j < hi; ++j) out[j] += r[j] * u[i];
    }
  }
}

void lse_rows(const Matrix& c, std::span<const double> g, double lambda, std::span<double> out) {
  const auto rows = static_cast<std::ptrdiff_t>(c.rows());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < rows; ++i) {
    const auto r = c.row(i);
    double mx = kNegInf;
    for (std::size_t j = 0; j < r.size(); ++j) mx = std::max(mx, (g[j] - r[j]) / lambda);
    double s = 0.0;
    for (std::size_t j = 0; j < r.size(); ++j) s += std::exp((g[j] - r[j]) / lambda - mx);
    out[i] = mx + std::log(s);
  }
}

void lse_cols(const Matrix& c, std::span<const double> f, double lambda, std::span<double> out) {
  const std::size_t n = c.cols();
  const auto nb = blocks_of(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < nb; ++b) {
    const std::size_t lo = b * kBlock, hi = std::min(n, lo + kBlock);
    std::array<double, kBlock> mx, s{};
    mx.fill(kNegInf);
    for (std::size_t i = 0; i < c.rows(); ++i) {
      const auto r = c.row(i);
      for (std::size_t j = lo; j < hi; ++j) mx[j - lo] = std::max(mx[j - lo], (f[i] - r[j]) / lambda);
    }
    for (std::size_t i = 0; i < c.rows(); ++i) {
      const auto r = c.row(i);
      for (std::size_t j = lo; j < hi; ++j) s[j - lo] += std::exp((f[i] - r[j]) / lambda - mx[j - lo]);
    }
    for (std::size_t j = lo; j < hi; ++j) out[j] = mx[j - lo] + std::log(s[j - lo]);
  }
}

}  // namespace

const Table& parallel() {
  static const Table t{row_newton,     col_newton,    row_max, col_max,
                       sub_rows_clamp, sub_cols_clamp, clamp,  psi_prime_map,
                       sq_euclidean,   matvec,        matvec_t, lse_rows,
                       lse_cols};
  return t;
}

bool openmp_enabled() noexcept {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

int max_threads() noexcept {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace betaot::kernels
