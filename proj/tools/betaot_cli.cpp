// Command-line front end: gen | distance | detect | solve.
//
// Exit codes: 0 ok, 2 bad input or arguments, 3 infeasible z/budget,
// 4 numerical failure.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "betaot/commands.hpp"
#include "betaot/errors.hpp"

namespace {

using betaot::cli::Options;

struct Shared {
  Options opt;
  std::string mode = "robust";
  std::string target = "1..20";
  std::string method = "zero-column";
  std::string truth, out, report;
  double z = 0.0;
  long iterations = 0;
  bool parallel = false;
};

void add_solver_flags(CLI::App* app, Shared& s, bool with_mode) {
  if (with_mode)
    app->add_option("--mode", s.mode, "robust | sinkhorn | exact | nasa-euclidean")
        ->capture_default_str();
  app->add_option("--beta", s.opt.beta, "beta-potential exponent (> 1)")->capture_default_str();
  app->add_option("--lambda", s.opt.lambda, "regularisation strength")->capture_default_str();
  app->add_option("--z", s.z, "outlier distance tolerance");
  app->add_option("--T", s.iterations, "explicit number of sweeps");
  app->add_flag("--auto-scale", s.opt.auto_scale, "rescale costs so the budget lands in --target-T");
  app->add_option("--target-T", s.target, "acceptable budget range lo..hi")->capture_default_str();
  app->add_option("--eps-zero", s.opt.eps_zero, "zero threshold for plan entries")
      ->capture_default_str();
  app->add_option("--tol", s.opt.tol, "residual tolerance (sinkhorn, nasa)")->capture_default_str();
  app->add_option("--max-iter", s.opt.max_iter, "iteration cap (sinkhorn, nasa)")
      ->capture_default_str();
  app->add_option("--out", s.out, "plan / flagged-index output file");
  app->add_option("--report", s.report, "write key=value report here (plus .json)");
  app->add_flag("--parallel", s.parallel, "use the OpenMP kernels");
}

Options finish(Shared& s, CLI::App* app) {
  Options o = s.opt;
  o.mode = betaot::cli::parse_mode(s.mode);
  o.target = betaot::cli::parse_range(s.target);
  if (app->count("--z")) o.z = s.z;
  if (app->count("--T")) {
    if (s.iterations < 1) throw betaot::InputError("--T must be >= 1");
    o.iterations = s.iterations;
  }
  if (!s.truth.empty()) o.truth = s.truth;
  if (!s.out.empty()) o.out = s.out;
  if (s.method == "zero-column") o.method = betaot::DetectMethod::ZeroColumn;
  else if (s.method == "baseline") o.method = betaot::DetectMethod::Baseline;
  else throw betaot::InputError("unknown --method '" + s.method + "' (zero-column|baseline)");
  o.exec = s.parallel ? betaot::Exec::Parallel : betaot::Exec::Serial;
  return o;
}

void emit(const betaot::RunReport& r, const std::string& path) {
  std::cout << r.to_text();
  if (!path.empty()) r.write(path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Outlier-robust optimal transport with beta-potential regularisation"};
  app.require_subcommand(1);

  std::string spec, gen_out, gen_truth;
  std::uint64_t gen_seed = 0;
  auto* gen = app.add_subcommand("gen", "draw a synthetic point cloud");
  gen->add_option("--spec", spec, "sample spec, e.g. gaussian(n=100;dim=2)+point(n=5;at=70;outlier)")
      ->required();
  gen->add_option("--seed", gen_seed, "RNG seed")->capture_default_str();
  gen->add_option("--out", gen_out, "output CSV")->required();
  gen->add_option("--truth-out", gen_truth, "write outlier indices here");
  std::string gen_report;
  gen->add_option("--report", gen_report, "write key=value report here (plus .json)");

  Shared dist_s;
  std::string dist_x, dist_y;
  auto* dist = app.add_subcommand("distance", "transport cost between two point clouds");
  dist->add_option("x", dist_x, "source points CSV")->required();
  dist->add_option("y", dist_y, "target points CSV")->required();
  add_solver_flags(dist, dist_s, true);

  Shared det_s;
  std::string det_clean, det_dirty;
  auto* det = app.add_subcommand("detect", "flag outliers of a contaminated sample");
  det->add_option("clean", det_clean, "clean reference CSV")->required();
  det->add_option("dirty", det_dirty, "contaminated CSV")->required();
  add_solver_flags(det, det_s, false);
  det->add_option("--percentile", det_s.opt.percentile, "percentile for the z estimate")
      ->capture_default_str();
  det->add_option("--seed", det_s.opt.seed, "seed for the z-estimate split")->capture_default_str();
  det->add_option("--truth", det_s.truth, "true outlier indices, for recall/specificity");
  det->add_option("--method", det_s.method, "zero-column | baseline")->capture_default_str();

  Shared sol_s;
  std::string sol_cost;
  auto* sol = app.add_subcommand("solve", "solve on a precomputed cost matrix");
  sol->add_option("cost", sol_cost, "cost matrix CSV")->required();
  add_solver_flags(sol, sol_s, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*gen) {
      std::optional<std::filesystem::path> t;
      if (!gen_truth.empty()) t = gen_truth;
      emit(betaot::cli::cmd_gen(spec, gen_seed, gen_out, t), gen_report);
    } else if (*dist) {
      emit(betaot::cli::cmd_distance(dist_x, dist_y, finish(dist_s, dist)), dist_s.report);
    } else if (*det) {
      emit(betaot::cli::cmd_detect(det_clean, det_dirty, finish(det_s, det)), det_s.report);
    } else if (*sol) {
      emit(betaot::cli::cmd_solve(sol_cost, finish(sol_s, sol)), sol_s.report);
    }
  } catch (const betaot::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  }
  return 0;
}
