#include "betaot/detect.hpp"

#include <algorithm>
#include <limits>

#include "betaot/errors.hpp"

namespace betaot {

std::string_view to_string(DetectMethod m) {
  return m == DetectMethod::ZeroColumn ? "zero-column" : "baseline";
}

OutlierReport detect_outliers(const Matrix& pi, double eps_zero) {
  std::vector<double> col_max(pi.cols(), -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < pi.rows(); ++i) {
    const auto r = pi.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) col_max[j] = std::max(col_max[j], r[j]);
  }
  OutlierReport rep;
  rep.n = pi.cols();
  rep.method = DetectMethod::ZeroColumn;
  for (std::size_t j = 0; j < col_max.size(); ++j)
    if (col_max[j] <= eps_zero) rep.flagged.push_back(j);
  return rep;
}

OutlierReport baseline_detect(const CostMatrix& cost, double z) {
  if (!(z >= 0.0)) throw InputError("baseline_detect: z must be >= 0");
  std::vector<double> col_min(cost.cols(), std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < cost.rows(); ++i) {
    const auto r = cost.gamma().row(i);
    for (std::size_t j = 0; j < r.size(); ++j) col_min[j] = std::min(col_min[j], r[j]);
  }
  OutlierReport rep;
  rep.n = cost.cols();
  rep.method = DetectMethod::Baseline;
  rep.params.z = z;
  for (std::size_t j = 0; j < col_min.size(); ++j)
    if (col_min[j] > z) rep.flagged.push_back(j);
  return rep;
}

DetectionMetrics detection_metrics(const OutlierReport& report, const std::set<std::size_t>& truth) {
  for (std::size_t t : truth)
    if (t >= report.n) throw InputError("truth index " + std::to_string(t) + " out of range");
  std::size_t hit = 0, false_alarm = 0;
  for (std::size_t j : report.flagged) {
    if (truth.contains(j))
      ++hit;
    else
      ++false_alarm;
  }
  const std::size_t inliers = report.n - truth.size();
  DetectionMetrics out;
  out.outlier_recall = truth.empty() ? 1.0 : static_cast<double>(hit) / static_cast<double>(truth.size());
  out.inlier_specificity =
      inliers == 0 ? 1.0
                   : static_cast<double>(inliers - false_alarm) / static_cast<double>(inliers);
  return out;
}

}  // namespace betaot
