#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string_view>
#include <vector>

#include "betaot/cost_matrix.hpp"
#include "betaot/matrix.hpp"

namespace betaot {

enum class DetectMethod { ZeroColumn, Baseline };

std::string_view to_string(DetectMethod m);

/// Settings a detection run used, carried along for reporting.
struct DetectParams {
  std::optional<double> z;
  std::optional<double> percentile;
  std::optional<long> iterations;
  std::optional<double> beta;
  std::optional<double> lambda;
};

struct OutlierReport {
  std::vector<std::size_t> flagged;  ///< sorted, unique, each < n
  std::size_t n = 0;
  DetectMethod method = DetectMethod::ZeroColumn;
  DetectParams params;
};

struct DetectionMetrics {
  double outlier_recall = 1.0;      ///< |flagged & truth| / |truth|, 1 if truth is empty
  double inlier_specificity = 1.0;  ///< unflagged inliers / inliers, 1 if there are none
};

/// Flags column j when max_i pi_ij <= eps_zero.
OutlierReport detect_outliers(const Matrix& pi, double eps_zero);

/// Flags column j when min_i gamma_ij > z (strict; a tie stays an inlier).
OutlierReport baseline_detect(const CostMatrix& cost, double z);

/// Throws InputError if a truth index is >= report.n.
DetectionMetrics detection_metrics(const OutlierReport& report, const std::set<std::size_t>& truth);

}  // namespace betaot
