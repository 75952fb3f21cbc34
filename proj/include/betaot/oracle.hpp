#pragma once

#include <cstddef>
#include <vector>

#include "betaot/cost_matrix.hpp"
#include "betaot/matrix.hpp"

namespace betaot {

/// Optimal coupling for uniform marginals and its cost.
struct ExactSolution {
  double value = 0.0;
  Matrix plan;
};

struct Assignment {
  std::vector<std::size_t> col_of_row;
  double cost = 0.0;
};

/// Minimum-cost perfect matching on a square cost matrix (shortest
/// augmenting paths with dual potentials, O(n^3)).
Assignment linear_assignment(const Matrix& cost);

/// Largest instance exact_ot accepts, as m * n.
inline constexpr std::size_t kExactOtMaxEntries = 1'000'000;

/// Exact discrete OT between uniform histograms. Square problems go through
/// linear_assignment (an optimal vertex is a scaled permutation); rectangular
/// ones through a min-cost flow on integer supplies n (per source) and m (per
/// sink). Throws InputError above kExactOtMaxEntries.
ExactSolution exact_ot(const CostMatrix& cost);

}  // namespace betaot
