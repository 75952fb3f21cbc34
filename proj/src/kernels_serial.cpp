#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "betaot/kernels.hpp"

namespace betaot::kernels {
namespace {

void row_newton(const Matrix& ts, const Potential& pot, double target, double eps_den,
                std::span<double> tau) {
  for (std::size_t i = 0; i < ts.rows(); ++i) {
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
  std::vector<double> num(n, 0.0), den(n, 0.0);
  for (std::size_t i = 0; i < ts.rows(); ++i) {
    const auto r = ts.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      const auto d = pot.psi_derivs(r[j]);
      num[j] += d.first;
      den[j] += d.second;
    }
  }
  for (std::size_t j = 0; j < n; ++j) sigma[j] = den[j] < eps_den ? 0.0 : (num[j] - target) / den[j];
}

void row_max(const Matrix& m, std::span<double> out) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto r = m.row(i);
    out[i] = *std::max_element(r.begin(), r.end());
  }
}

void col_max(const Matrix& m, std::span<double> out) {
  std::fill(out.begin(), out.end(), -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto r = m.row(i);
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] = std::max(out[j], r[j]);
  }
}

void sub_rows_clamp(Matrix& tt, Matrix& ts, std::span<const double> tau, double clamp) {
  for (std::size_t i = 0; i < tt.rows(); ++i) {
    auto a = tt.row(i);
    auto b = ts.row(i);
    for (std::size_t j = 0; j < a.size(); ++j) {
      a[j] -= tau[i];
      b[j] = std::max(clamp, a[j]);
    }
  }
}

void sub_cols_clamp(Matrix& tt, Matrix& ts, std::span<const double> sigma, double clamp) {
  for (std::size_t i = 0; i < tt.rows(); ++i) {
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
  for (std::size_t k = 0; k < s.size(); ++k) d[k] = std::max(lo, s[k]);
}

void psi_prime_map(const Matrix& ts, const Potential& pot, Matrix& out) {
  const auto s = ts.values();
  auto d = out.values();
  for (std::size_t k = 0; k < s.size(); ++k) d[k] = pot.psi_prime(s[k]);
}

void sq_euclidean(std::span<const double> x, std::span<const double> y, std::size_t d,
                  Matrix& out) {
  for (std::size_t i = 0; i < out.rows(); ++i) {
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
  for (std::size_t i = 0; i < k.rows(); ++i) {
    const auto r = k.row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < r.size(); ++j) s += r[j] * v[j];
    out[i] = s;
  }
}

void matvec_t(const Matrix& k, std::span<const double> u, std::span<double> out) {
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t i = 0; i < k.rows(); ++i) {
    const auto r = k.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) out[j] += r[j] * u[i];
  }
}

void lse_rows(const Matrix& c, std::span<const double> g, double lambda, std::span<double> out) {
  for (std::size_t i = 0; i < c.rows(); ++i) {
    const auto r = c.row(i);
    double mx = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < r.size(); ++j) mx = std::max(mx, (g[j] - r[j]) / lambda);
    double s = 0.0;
    for (std::size_t j = 0; j < r.size(); ++j) s += std::exp((g[j] - r[j]) / lambda - mx);
    out[i] = mx + std::log(s);
  }
}

void lse_cols(const Matrix& c, std::span<const double> f, double lambda, std::span<double> out) {
  const std::size_t n = c.cols();
  std::vector<double> mx(n, -std::numeric_limits<double>::infinity()), s(n, 0.0);
  for (std::size_t i = 0; i < c.rows(); ++i) {
    const auto r = c.row(i);
    for (std::size_t j = 0; j < n; ++j) mx[j] = std::max(mx[j], (f[i] - r[j]) / lambda);
  }
  for (std::size_t i = 0; i < c.rows(); ++i) {
    const auto r = c.row(i);
    for (std::size_t j = 0; j < n; ++j) s[j] += std::exp((f[i] - r[j]) / lambda - mx[j]);
  }
  for (std::size_t j = 0; j < n; ++j) out[j] = mx[j] + std::log(s[j]);
}

}  // namespace

const Table& serial() {
  static const Table t{row_newton,     col_newton,    row_max, col_max,
                       sub_rows_clamp, sub_cols_clamp, clamp,  psi_prime_map,
                       sq_euclidean,   matvec,        matvec_t, lse_rows,
                       lse_cols};
  return t;
}

const Table& table(Exec exec) { return exec == Exec::Parallel ? parallel() : serial(); }

}  // namespace betaot::kernels
