#pragma once
// Randomised problem instances shared by unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "betaot/cost_matrix.hpp"
#include "support/oracles.hpp"

namespace instances {

/// A cost matrix with a planted outlier column set J: every entry of a
/// column in J is >= z, with z chosen so the iteration budget is 1..20.
struct Planted {
  betaot::CostMatrix cost;
  std::set<std::size_t> outliers;
  double beta, lambda, z;
};

inline Planted planted(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ub(1.2, 1.5), ul(2.0, 14.0), u01(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> us(10, 200);
  std::uniform_int_distribution<long> ut(1, 20);
  Planted p;
  p.beta = ub(rng);
  p.lambda = ul(rng);
  const std::size_t m = us(rng), n = us(rng);
  const double d = std::pow(1.0 / m, p.beta - 1) + std::pow(1.0 / n, p.beta - 1);
  const double t = static_cast<double>(ut(rng)) + 0.25 + 0.5 * u01(rng);
  p.z = p.lambda * (t * d + 1.0) / (p.beta - 1.0);

  const std::size_t k = 1 + static_cast<std::size_t>(u01(rng) * std::max<std::size_t>(1, n / 5));
  while (p.outliers.size() < k) p.outliers.insert(static_cast<std::size_t>(u01(rng) * n) % n);

  betaot::Matrix g(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      g(i, j) = p.outliers.count(j) ? p.z * (1.0 + 2.0 * u01(rng)) : p.z * u01(rng);
  // one entry of the first outlier column sits exactly on the tolerance
  g(0, *p.outliers.begin()) = p.z;
  p.cost = betaot::CostMatrix(std::move(g));
  return p;
}

inline betaot::CostMatrix random_cost(std::mt19937_64& rng, std::size_t m, std::size_t n,
                                      double lo = 0.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  betaot::Matrix g(m, n);
  for (double& v : g.values()) v = u(rng);
  return betaot::CostMatrix(std::move(g));
}

}  // namespace instances
