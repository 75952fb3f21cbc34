#pragma once
// Glue between the oracle's plain grids and library matrices.

#include "betaot/matrix.hpp"
#include "support/oracles.hpp"

inline betaot::Matrix to_matrix(const oracle::Grid& g) {
  betaot::Matrix m(g.size(), g.empty() ? 0 : g[0].size());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = g[i][j];
  return m;
}

inline oracle::Grid to_grid(const betaot::Matrix& m) {
  oracle::Grid g(m.rows(), std::vector<double>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) g[i][j] = m(i, j);
  return g;
}
