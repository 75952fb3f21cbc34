#include "betaot/commands.hpp"

#include <chrono>
#include <tuple>

#include "betaot/errors.hpp"
#include "betaot/generate.hpp"
#include "betaot/io.hpp"
#include "betaot/oracle.hpp"
#include "betaot/solver.hpp"

namespace betaot::cli {
namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

SolverConfig make_config(const Options& opt) {
  SolverConfig cfg;
  cfg.beta = opt.beta;
  cfg.lambda = opt.lambda;
  cfg.iterations = opt.iterations;
  cfg.sinkhorn_tol = opt.tol;
  cfg.max_iter = opt.max_iter;
  cfg.eps_zero = opt.eps_zero;
  cfg.exec = opt.exec;
  return cfg;
}

void put_plan(RunReport& r, const TransportPlan& plan, double value) {
  r.set("value", value);
  r.set("row_residual_l1", plan.row_residual_l1);
  r.set("col_residual_l1", plan.col_residual_l1);
  r.set("iterations", plan.iterations_run);
}

/// Robust solve on `cost` with tolerance z (may be unset when T is given).
TransportPlan run_robust(const CostMatrix& cost, std::optional<double> z, const Options& opt,
                         RunReport& r) {
  SolverConfig cfg = make_config(opt);
  r.set("beta", opt.beta);
  r.set("lambda", opt.lambda);
  if (!z && !cfg.iterations)
    throw InputError("robust mode needs --z or --T");

  const CostMatrix* work = &cost;
  ScaledProblem scaled;
  double scale = 1.0;
  if (z) {
    r.set("z", *z);
    if (opt.auto_scale) {
      scaled = auto_scale(cost, *z, cfg, opt.target);
      scale = scaled.scale;
      work = &scaled.cost;
      cfg.z = scaled.z;
      r.set("target_T", std::to_string(opt.target.lo) + ".." + std::to_string(opt.target.hi));
    } else {
      cfg.z = z;
    }
    try {
      const IterationBudget b = iteration_budget(*cfg.z, cfg, cost.rows(), cost.cols());
      r.set("budget", b.budget);
      r.set("t_max_real", b.t_max_real);
    } catch (const InfeasibleError& e) {
      if (!cfg.iterations)
        throw InfeasibleError(std::string(e.what()) + " (try --auto-scale)");
    }
  }
  r.set("scale", scale);
  const TransportPlan plan = robust_solve(*work, cfg);
  r.set("T", plan.iterations_run);
  r.set("robust_guarantee", plan.robust_guarantee);
  return plan;
}

TransportPlan run_mode(const CostMatrix& cost, std::optional<double> z, const Options& opt,
                       RunReport& r) {
  r.set("mode", to_string(opt.mode));
  switch (opt.mode) {
    case Mode::Robust:
      return run_robust(cost, z, opt, r);
    case Mode::Sinkhorn: {
      r.set("lambda", opt.lambda);
      r.set("tol", opt.tol);
      TransportPlan p = sinkhorn_solve_stable(cost, opt.lambda, opt.tol, opt.max_iter, opt.exec);
      r.set("converged", p.converged);
      r.set("log_domain", p.log_domain);
      return p;
    }
    case Mode::Exact: {
      ExactSolution s = exact_ot(cost);
      TransportPlan p;
      p.pi = std::move(s.plan);
      p.value = s.value;
      std::tie(p.row_residual_l1, p.col_residual_l1) = marginal_residuals(p.pi);
      p.converged = true;
      return p;
    }
    case Mode::NasaEuclidean: {
      r.set("lambda", opt.lambda);
      r.set("tol", opt.tol);
      TransportPlan p = nasa_solve(cost, opt.lambda, Potential::squared_euclidean(), opt.tol,
                                   opt.max_iter, opt.exec);
      r.set("converged", p.converged);
      return p;
    }
  }
  throw InputError("unknown mode");
}

}  // namespace

Mode parse_mode(const std::string& text) {
  if (text == "robust") return Mode::Robust;
  if (text == "sinkhorn") return Mode::Sinkhorn;
  if (text == "exact") return Mode::Exact;
  if (text == "nasa-euclidean") return Mode::NasaEuclidean;
  throw InputError("unknown mode '" + text + "' (robust|sinkhorn|exact|nasa-euclidean)");
}

std::string to_string(Mode m) {
  switch (m) {
    case Mode::Robust: return "robust";
    case Mode::Sinkhorn: return "sinkhorn";
    case Mode::Exact: return "exact";
    case Mode::NasaEuclidean: return "nasa-euclidean";
  }
  return "?";
}

BudgetRange parse_range(const std::string& text) {
  BudgetRange r;
  const auto dots = text.find("..");
  try {
    std::size_t used = 0;
    if (dots == std::string::npos) {
      r.lo = r.hi = std::stol(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
    } else {
      const std::string a = text.substr(0, dots), b = text.substr(dots + 2);
      r.lo = std::stol(a, &used);
      if (used != a.size()) throw std::invalid_argument(a);
      r.hi = std::stol(b, &used);
      if (used != b.size()) throw std::invalid_argument(b);
    }
  } catch (const std::logic_error&) {
    throw InputError("target range '" + text + "' is not of the form lo..hi");
  }
  if (r.lo < 1 || r.hi < r.lo) throw InputError("target range '" + text + "' is empty or below 1");
  return r;
}

RunReport cmd_gen(const std::string& spec, std::uint64_t seed, const std::filesystem::path& out,
                  const std::optional<std::filesystem::path>& truth_out) {
  const auto t0 = Clock::now();
  RunReport r("gen");
  const SampleSpec parsed = parse_sample_spec(spec);
  const Sample s = draw_sample(parsed, seed);
  io::write_point_cloud(out, s.points);
  if (truth_out) io::write_indices(*truth_out, s.outliers);
  r.set("spec", spec);
  r.set("seed", seed);
  r.set("count", s.points.size());
  r.set("dim", parsed.dim);
  r.set("outlier_count", s.outliers.size());
  r.set("output.sha256", sha256_file(out));
  r.set("timing.total_ms", ms_since(t0));
  return r;
}

RunReport cmd_distance(const std::filesystem::path& x, const std::filesystem::path& y,
                       const Options& opt) {
  const auto t0 = Clock::now();
  RunReport r("distance");
  const PointCloud px = io::read_point_cloud(x);
  const PointCloud py = io::read_point_cloud(y);
  r.set("input.x.sha256", sha256_file(x));
  r.set("input.y.sha256", sha256_file(y));
  r.set("m", px.size());
  r.set("n", py.size());
  const CostMatrix cost = sq_euclidean_cost(px, py, opt.exec);

  std::optional<double> z = opt.z;
  if (opt.mode == Mode::Robust && !z) {
    z = median_threshold(cost);
    r.set("z_source", "median");
  }
  const auto t1 = Clock::now();
  const TransportPlan plan = run_mode(cost, z, opt, r);
  r.set("timing.solve_ms", ms_since(t1));
  put_plan(r, plan, transport_value(plan.pi, cost));
  if (opt.out) io::write_matrix(*opt.out, plan.pi);
  r.set("timing.total_ms", ms_since(t0));
  return r;
}

RunReport cmd_detect(const std::filesystem::path& clean, const std::filesystem::path& dirty,
                     const Options& opt) {
  const auto t0 = Clock::now();
  RunReport r("detect");
  const PointCloud pc = io::read_point_cloud(clean);
  const PointCloud pd = io::read_point_cloud(dirty);
  r.set("input.clean.sha256", sha256_file(clean));
  r.set("input.dirty.sha256", sha256_file(dirty));
  r.set("m", pc.size());
  r.set("n", pd.size());
  r.set("seed", opt.seed);
  r.set("method", std::string(to_string(opt.method)));

  double z;
  if (opt.z) {
    z = *opt.z;
    r.set("z_source", "flag");
  } else {
    z = estimate_z(pc, opt.percentile, opt.seed, opt.exec);
    r.set("z_source", "subsample");
    r.set("percentile", opt.percentile);
  }
  const CostMatrix cost = sq_euclidean_cost(pc, pd, opt.exec);

  OutlierReport rep;
  const auto t1 = Clock::now();
  if (opt.method == DetectMethod::Baseline) {
    r.set("z", z);
    rep = baseline_detect(cost, z);
  } else {
    Options o = opt;
    o.mode = Mode::Robust;
    r.set("mode", to_string(o.mode));
    const TransportPlan plan = run_robust(cost, z, o, r);
    put_plan(r, plan, transport_value(plan.pi, cost));
    rep = detect_outliers(plan.pi, opt.eps_zero);
    r.set("eps_zero", opt.eps_zero);
  }
  r.set("timing.solve_ms", ms_since(t1));
  r.set("flagged", rep.flagged);
  r.set("flagged_count", rep.flagged.size());
  if (opt.out) io::write_indices(*opt.out, rep.flagged);
  if (opt.truth) {
    const auto truth = io::read_index_set(*opt.truth);
    const DetectionMetrics mtr = detection_metrics(rep, truth);
    r.set("input.truth.sha256", sha256_file(*opt.truth));
    r.set("outlier_recall", mtr.outlier_recall);
    r.set("inlier_specificity", mtr.inlier_specificity);
  }
  r.set("timing.total_ms", ms_since(t0));
  return r;
}

RunReport cmd_solve(const std::filesystem::path& cost_path, const Options& opt) {
  const auto t0 = Clock::now();
  RunReport r("solve");
  const CostMatrix cost = io::read_cost_matrix(cost_path);
  r.set("input.cost.sha256", sha256_file(cost_path));
  r.set("m", cost.rows());
  r.set("n", cost.cols());
  const auto t1 = Clock::now();
  const TransportPlan plan = run_mode(cost, opt.z, opt, r);
  r.set("timing.solve_ms", ms_since(t1));
  put_plan(r, plan, transport_value(plan.pi, cost));
  if (opt.out) {
    io::write_matrix(*opt.out, plan.pi);
    r.set("plan", opt.out->string());
  }
  r.set("timing.total_ms", ms_since(t0));
  return r;
}

}  // namespace betaot::cli
