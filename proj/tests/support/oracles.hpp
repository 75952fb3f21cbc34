#pragma once
// Independent reference computations for the tests. Nothing here calls into
// the library's numerical code; inputs and outputs are plain vectors.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace oracle {

using Grid = std::vector<std::vector<double>>;

/// Minimum over all permutations of sum_i c[i][p(i)], summed in row order.
inline double brute_force_assignment_sum(const Grid& c) {
  const std::size_t n = c.size();
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += c[i][p[i]];
    best = std::min(best, s);
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

/// The same minimum as an OT value between uniform histograms.
inline double brute_force_assignment(const Grid& c) {
  return brute_force_assignment_sum(c) / static_cast<double>(c.size());
}

/// Right-hand side of the zero-mass iteration bound, written out directly.
inline double budget_rhs(double z, double beta, double lambda, double m, double n) {
  return ((z / lambda) * (beta - 1.0) - 1.0) /
         (std::pow(1.0 / m, beta - 1.0) + std::pow(1.0 / n, beta - 1.0));
}

/// Plain triple-loop transcription of the truncated single-step scaling for
/// the beta-potential. Returns the plan.
inline Grid reference_robust(const Grid& cost, double beta, double lambda, long T) {
  const std::size_t m = cost.size(), n = cost[0].size();
  const double lo = 1.0 / (1.0 - beta);
  auto d1 = [&](double t) { return t <= lo ? 0.0 : std::pow((beta - 1) * t + 1, 1 / (beta - 1)); };
  auto d2 = [&](double t) {
    return t <= lo ? 0.0 : std::pow((beta - 1) * t + 1, (2 - beta) / (beta - 1));
  };
  auto fp = [&](double p) { return (std::pow(p, beta - 1) - 1) / (beta - 1); };
  Grid tt(m, std::vector<double>(n)), ts = tt;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      tt[i][j] = -cost[i][j] / lambda;
      ts[i][j] = std::max(lo, tt[i][j]);
    }
  for (long t = 0; t < T; ++t) {
    for (std::size_t i = 0; i < m; ++i) {
      double a = 0, b = 0, mx = -std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < n; ++j) {
        a += d1(ts[i][j]);
        b += d2(ts[i][j]);
        mx = std::max(mx, ts[i][j]);
      }
      double tau = b < 1e-12 ? 0.0 : (a - 1.0 / m) / b;
      tau = std::max(tau, mx - fp(1.0 / m));
      for (std::size_t j = 0; j < n; ++j) {
        tt[i][j] -= tau;
        ts[i][j] = std::max(lo, tt[i][j]);
      }
    }
    for (std::size_t j = 0; j < n; ++j) {
      double a = 0, b = 0, mx = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m; ++i) {
        a += d1(ts[i][j]);
        b += d2(ts[i][j]);
        mx = std::max(mx, ts[i][j]);
      }
      double sg = b < 1e-12 ? 0.0 : (a - 1.0 / n) / b;
      sg = std::max(sg, mx - fp(1.0 / n));
      for (std::size_t i = 0; i < m; ++i) {
        tt[i][j] -= sg;
        ts[i][j] = std::max(lo, tt[i][j]);
      }
    }
  }
  Grid pi(m, std::vector<double>(n));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) pi[i][j] = d1(ts[i][j]);
  return pi;
}

inline Grid random_grid(std::mt19937_64& rng, std::size_t m, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Grid g(m, std::vector<double>(n));
  for (auto& r : g)
    for (auto& v : r) v = u(rng);
  return g;
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& tag) {
  auto p = std::filesystem::temp_directory_path() / ("betaot_test_" + tag);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace oracle
