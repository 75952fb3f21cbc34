#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "betaot/costs.hpp"
#include "betaot/detect.hpp"
#include "betaot/kernels.hpp"
#include "betaot/report.hpp"

namespace betaot::cli {

enum class Mode { Robust, Sinkhorn, Exact, NasaEuclidean };

/// Accepts robust | sinkhorn | exact | nasa-euclidean.
Mode parse_mode(const std::string& text);
std::string to_string(Mode m);
/// Parses "lo..hi" (or a single integer k as k..k).
BudgetRange parse_range(const std::string& text);

struct Options {
  Mode mode = Mode::Robust;
  double beta = 1.2;
  double lambda = 2.0;
  std::optional<double> z;
  std::optional<long> iterations;
  double percentile = 99.0;
  bool auto_scale = false;
  BudgetRange target{1, 20};
  std::uint64_t seed = 0;
  std::optional<std::filesystem::path> truth;
  std::optional<std::filesystem::path> out;
  DetectMethod method = DetectMethod::ZeroColumn;
  double eps_zero = 1e-12;
  double tol = 1e-9;
  long max_iter = 10000;
  Exec exec = Exec::Serial;
};

/// Draws `spec` (see parse_sample_spec) and writes it as a point-cloud CSV.
/// Indices of `outlier` components go to truth_out when given.
RunReport cmd_gen(const std::string& spec, std::uint64_t seed, const std::filesystem::path& out,
                  const std::optional<std::filesystem::path>& truth_out = std::nullopt);

/// Squared-Euclidean cost between x (rows) and y (columns), then the chosen
/// solver. Robust mode takes z from the median cost unless given. Reported
/// values are in the units of the unscaled cost.
RunReport cmd_distance(const std::filesystem::path& x, const std::filesystem::path& y,
                       const Options& opt);

/// Outlier detection of `dirty` against `clean`: estimate z, optionally
/// rescale, run within the budget, flag all-zero plan columns (or use the
/// min-distance baseline). Flagged indices go to opt.out when given.
RunReport cmd_detect(const std::filesystem::path& clean, const std::filesystem::path& dirty,
                     const Options& opt);

/// Runs a solver directly on a cost CSV; the plan goes to opt.out when given.
RunReport cmd_solve(const std::filesystem::path& cost, const Options& opt);

}  // namespace betaot::cli
