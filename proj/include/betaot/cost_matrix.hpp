#pragma once

#include <cstddef>

#include "betaot/matrix.hpp"

namespace betaot {

/// Dense m x n matrix of pairwise transport costs. Entries are finite and
/// nonnegative; construction rejects anything else with InputError.
class CostMatrix {
 public:
  CostMatrix() = default;
  explicit CostMatrix(Matrix gamma);

  const Matrix& gamma() const noexcept { return gamma_; }
  std::size_t rows() const noexcept { return gamma_.rows(); }
  std::size_t cols() const noexcept { return gamma_.cols(); }
  double operator()(std::size_t i, std::size_t j) const noexcept { return gamma_(i, j); }

  CostMatrix transposed() const;
  /// Every entry multiplied by s > 0.
  CostMatrix scaled(double s) const;
  double mean() const;
  double max() const;

 private:
  Matrix gamma_;
};

}  // namespace betaot
