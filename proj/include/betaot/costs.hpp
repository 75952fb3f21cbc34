#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "betaot/cost_matrix.hpp"
#include "betaot/kernels.hpp"
#include "betaot/solver.hpp"

namespace betaot {

/// Points of a common dimension, stored row-major.
class PointCloud {
 public:
  PointCloud() = default;
  explicit PointCloud(std::size_t dim) : dim_(dim) {}
  /// Throws InputError on ragged rows or non-finite coordinates.
  static PointCloud from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  std::span<const double> point(std::size_t i) const { return {coords_.data() + i * dim_, dim_}; }
  std::span<const double> coords() const noexcept { return coords_; }

  /// Appends one point; throws InputError on a dimension mismatch.
  void push_back(std::span<const double> p);
  PointCloud subset(std::span<const std::size_t> indices) const;
  /// Every coordinate multiplied by c.
  PointCloud scaled(double c) const;

 private:
  std::size_t dim_ = 0;
  std::vector<double> coords_;
};

/// gamma_ij = ||x_i - y_j||^2. Throws NumericalError if an entry overflows.
CostMatrix sq_euclidean_cost(const PointCloud& x, const PointCloud& y, Exec exec = Exec::Serial);

/// Median of all entries; the midpoint of the two central values for an even count.
double median_threshold(const CostMatrix& cost);

/// Nearest-rank percentile: the ceil(p/100 * N)-th smallest value, p in (0, 100].
double nearest_rank_percentile(std::vector<double> values, double percentile);

/// Percentile of the per-row minima of the cross cost between two halves.
double split_min_distance_percentile(const PointCloud& rows, const PointCloud& cols,
                                     double percentile, Exec exec = Exec::Serial);

/// Outlier tolerance from a clean sample: seeded shuffle, first floor(k/2)
/// points against the rest, nearest-rank percentile of the row minima.
double estimate_z(const PointCloud& clean, double percentile, std::uint64_t seed,
                  Exec exec = Exec::Serial);

/// Inclusive range of acceptable iteration budgets.
struct BudgetRange {
  long lo = 1;
  long hi = 20;
};

struct ScaledProblem {
  double scale = 1.0;
  CostMatrix cost;
  double z = 0.0;
  IterationBudget budget;
};

/// Multiplies the costs and z by one factor s so that the iteration budget
/// lands inside `target`. Leaves the problem untouched (s = 1) if it already
/// does; otherwise aims at the midpoint k of the range by putting the bound at
/// k + 1/2. Throws InputError for a bad range or z, InfeasibleError if the
/// rescaled budget still misses the range.
ScaledProblem auto_scale(const CostMatrix& cost, double z, const SolverConfig& cfg,
                         BudgetRange target);

}  // namespace betaot
