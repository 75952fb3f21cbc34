#include "betaot/costs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "betaot/errors.hpp"

namespace betaot {

CostMatrix::CostMatrix(Matrix gamma) : gamma_(std::move(gamma)) {
  for (std::size_t i = 0; i < gamma_.rows(); ++i) {
    for (std::size_t j = 0; j < gamma_.cols(); ++j) {
      const double g = gamma_(i, j);
      if (!std::isfinite(g) || g < 0.0) {
        std::ostringstream os;
        os << "cost entry (" << i << ", " << j << ") = " << g << " is not finite and nonnegative";
        throw InputError(os.str());
      }
    }
  }
}

CostMatrix CostMatrix::transposed() const { return CostMatrix(gamma_.transposed()); }

CostMatrix CostMatrix::scaled(double s) const {
  if (!(s > 0.0) || !std::isfinite(s)) throw InputError("CostMatrix::scaled: factor must be > 0");
  Matrix g = gamma_;
  for (double& v : g.values()) v *= s;
  return CostMatrix(std::move(g));
}

double CostMatrix::mean() const {
  if (gamma_.empty()) throw InputError("mean of an empty cost matrix");
  double s = 0.0;
  for (double v : gamma_.values()) s += v;
  return s / static_cast<double>(gamma_.size());
}

double CostMatrix::max() const {
  if (gamma_.empty()) throw InputError("max of an empty cost matrix");
  const auto v = gamma_.values();
  return *std::max_element(v.begin(), v.end());
}

PointCloud PointCloud::from_rows(const std::vector<std::vector<double>>& rows) {
  PointCloud pc(rows.empty() ? 0 : rows.front().size());
  for (const auto& r : rows) pc.push_back(r);
  return pc;
}

void PointCloud::push_back(std::span<const double> p) {
  if (p.size() != dim_) {
    std::ostringstream os;
    os << "point of dimension " << p.size() << " added to a cloud of dimension " << dim_;
    throw InputError(os.str());
  }
  for (double v : p)
    if (!std::isfinite(v)) throw InputError("point coordinates must be finite");
  coords_.insert(coords_.end(), p.begin(), p.end());
}

PointCloud PointCloud::subset(std::span<const std::size_t> indices) const {
  PointCloud out(dim_);
  out.coords_.reserve(indices.size() * dim_);
  for (std::size_t i : indices) {
    const auto p = point(i);
    out.coords_.insert(out.coords_.end(), p.begin(), p.end());
  }
  return out;
}

PointCloud PointCloud::scaled(double c) const {
  PointCloud out = *this;
  for (double& v : out.coords_) v *= c;
  return out;
}

CostMatrix sq_euclidean_cost(const PointCloud& x, const PointCloud& y, Exec exec) {
  if (x.dim() != y.dim()) {
    std::ostringstream os;
    os << "point clouds have different dimensions (" << x.dim() << " vs " << y.dim() << ")";
    throw InputError(os.str());
  }
  Matrix g(x.size(), y.size());
  kernels::table(exec).sq_euclidean(x.coords(), y.coords(), x.dim(), g);
  // finite coordinates can still overflow once squared
  for (double v : g.values())
    if (!std::isfinite(v)) throw NumericalError("squared distance overflows; rescale the data");
  return CostMatrix(std::move(g));
}

double median_threshold(const CostMatrix& cost) {
  const auto v = cost.gamma().values();
  if (v.empty()) throw InputError("median_threshold: empty cost matrix");
  std::vector<double> s(v.begin(), v.end());
  const std::size_t mid = s.size() / 2;
  std::nth_element(s.begin(), s.begin() + mid, s.end());
  const double upper = s[mid];
  if (s.size() % 2 == 1) return upper;
  const double lower = *std::max_element(s.begin(), s.begin() + mid);
  return 0.5 * (lower + upper);
}

double nearest_rank_percentile(std::vector<double> values, double percentile) {
  if (values.empty()) throw InputError("percentile of an empty sample");
  if (!(percentile > 0.0 && percentile <= 100.0)) {
    std::ostringstream os;
    os << "percentile must lie in (0, 100], got " << percentile;
    throw InputError(os.str());
  }
  const auto n = values.size();
  auto rank = static_cast<std::size_t>(std::ceil(percentile / 100.0 * static_cast<double>(n)));
  rank = std::clamp<std::size_t>(rank, 1, n);
  std::nth_element(values.begin(), values.begin() + (rank - 1), values.end());
  return values[rank - 1];
}

double split_min_distance_percentile(const PointCloud& rows, const PointCloud& cols,
                                     double percentile, Exec exec) {
  if (rows.size() == 0 || cols.size() == 0) throw InputError("subsample halves must be nonempty");
  const CostMatrix c = sq_euclidean_cost(rows, cols, exec);
  std::vector<double> minima(c.rows());
  for (std::size_t i = 0; i < c.rows(); ++i) {
    const auto r = c.gamma().row(i);
    minima[i] = *std::min_element(r.begin(), r.end());
  }
  return nearest_rank_percentile(std::move(minima), percentile);
}

double estimate_z(const PointCloud& clean, double percentile, std::uint64_t seed, Exec exec) {
  if (clean.size() < 4) {
    std::ostringstream os;
    os << "estimate_z needs at least 4 clean points, got " << clean.size();
    throw InputError(os.str());
  }
  if (!(percentile > 0.0 && percentile <= 100.0)) {
    std::ostringstream os;
    os << "percentile must lie in (0, 100], got " << percentile;
    throw InputError(os.str());
  }
  std::vector<std::size_t> idx(clean.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(idx.begin(), idx.end(), rng);
  const std::size_t half = idx.size() / 2;
  const std::span<const std::size_t> all(idx);
  return split_min_distance_percentile(clean.subset(all.first(half)),
                                       clean.subset(all.subspan(half)), percentile, exec);
}

ScaledProblem auto_scale(const CostMatrix& cost, double z, const SolverConfig& cfg,
                         BudgetRange target) {
  if (target.lo < 1 || target.hi < target.lo) {
    std::ostringstream os;
    os << "target budget range " << target.lo << ".." << target.hi << " is empty or below 1";
    throw InputError(os.str());
  }
  if (!(z > 0.0) || !std::isfinite(z)) throw InputError("auto_scale: z must be finite and > 0");
  const std::size_t m = cost.rows(), n = cost.cols();

  auto in_range = [&](long b) { return b >= target.lo && b <= target.hi; };
  try {
    const IterationBudget b = iteration_budget(z, cfg, m, n);
    if (in_range(b.budget)) return {1.0, cost, z, b};
  } catch (const InfeasibleError&) {
    // Out of range; rescale below.
  }

  // Invert the bound: t(s) = ((s z / lambda)(beta-1) - 1) / D is affine in s.
  const long mid = target.lo + (target.hi - target.lo) / 2;
  const double aim = static_cast<double>(mid) + 0.5;
  const double e = cfg.beta - 1.0;
  const double d = std::pow(1.0 / static_cast<double>(m), e) + std::pow(1.0 / static_cast<double>(n), e);
  const double s = cfg.lambda * (aim * d + 1.0) / (e * z);
  if (!(s > 0.0) || !std::isfinite(s)) throw InfeasibleError("auto_scale: no finite positive scale");

  ScaledProblem out{s, cost.scaled(s), s * z, {}};
  out.budget = iteration_budget(out.z, cfg, m, n);
  if (!in_range(out.budget.budget)) {
    std::ostringstream os;
    os << "auto_scale: rescaled budget " << out.budget.budget << " misses target " << target.lo
       << ".." << target.hi;
    throw InfeasibleError(os.str());
  }
  return out;
}

}  // namespace betaot
