#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "betaot/commands.hpp"
#include "betaot/io.hpp"
#include "betaot/solver.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

using namespace betaot;
namespace fs = std::filesystem;

#ifndef BETAOT_CLI_PATH
#error "BETAOT_CLI_PATH must point at the CLI binary"
#endif

namespace {
std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}
void spit(const fs::path& p, const std::string& s) { std::ofstream(p) << s; }

int run_cli(const std::string& args) {
  const std::string cmd = std::string(BETAOT_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

cli::Options robust_opts(double beta, double lambda, long T) {
  cli::Options o;
  o.beta = beta;
  o.lambda = lambda;
  o.iterations = T;
  return o;
}
}  // namespace

TEST_CASE("parse helpers") {
  CHECK(cli::parse_mode("nasa-euclidean") == cli::Mode::NasaEuclidean);
  CHECK_THROWS_AS(cli::parse_mode("fast"), InputError);
  auto r = cli::parse_range("3..9");
  CHECK(r.lo == 3);
  CHECK(r.hi == 9);
  r = cli::parse_range("4");
  CHECK(r.lo == 4);
  CHECK(r.hi == 4);
  CHECK_THROWS_AS(cli::parse_range("9..3"), InputError);
  CHECK_THROWS_AS(cli::parse_range("0..3"), InputError);
  CHECK_THROWS_AS(cli::parse_range("a..b"), InputError);
}

TEST_CASE("gen") {
  const auto dir = oracle::scratch_dir("cli_gen");
  cli::cmd_gen("gaussian(n=500;mean=0,0)", 7, dir / "a.csv");
  cli::cmd_gen("gaussian(n=500;mean=0,0)", 7, dir / "b.csv");
  CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
  cli::cmd_gen("gaussian(n=500;mean=0,0)", 8, dir / "c.csv");
  CHECK(slurp(dir / "a.csv") != slurp(dir / "c.csv"));

  const auto r = cli::cmd_gen("gaussian(n=0;dim=3)", 1, dir / "empty.csv");
  CHECK(slurp(dir / "empty.csv") == "x0,x1,x2\n");
  CHECK(r.at("count") == 0);

  cli::cmd_gen("gaussian(n=4;dim=2)+point(n=2;at=9,9;outlier)", 1, dir / "o.csv", dir / "t.txt");
  CHECK(io::read_index_set(dir / "t.txt") == std::set<std::size_t>{4, 5});
}

TEST_CASE("distance") {
  const auto dir = oracle::scratch_dir("cli_distance");
  cli::cmd_gen("gaussian(n=40;mean=0,0)", 3, dir / "x.csv");
  cli::cmd_gen("gaussian(n=30;mean=4,4)", 4, dir / "y.csv");

  cli::Options exact;
  exact.mode = cli::Mode::Exact;
  CHECK(cli::cmd_distance(dir / "x.csv", dir / "x.csv", exact).at("value") == 0.0);

  cli::Options robust;
  robust.out = dir / "plan.csv";
  const auto r = cli::cmd_distance(dir / "x.csv", dir / "y.csv", robust);
  CHECK(r.at("z_source") == "median");
  CHECK(r.has("budget"));
  CHECK(r.at("robust_guarantee") == true);
  // report value equals <pi, gamma> recomputed from the written plan
  const auto x = io::read_point_cloud(dir / "x.csv"), y = io::read_point_cloud(dir / "y.csv");
  const auto pi = io::read_cost_matrix(dir / "plan.csv").gamma();
  const double v = transport_value(pi, sq_euclidean_cost(x, y));
  CHECK(std::abs(v - r.at("value").get<double>()) <= 1e-9 * std::max(1.0, std::abs(v)));
  CHECK(r.at("input.x.sha256") == sha256_file(dir / "x.csv"));

  // determinism of every non-timing field
  const auto again = cli::cmd_distance(dir / "x.csv", dir / "y.csv", robust);
  CHECK(again.deterministic_fields() == r.deterministic_fields());

  robust.z = 9.0;  // below lambda/(beta-1) = 10
  CHECK_THROWS_AS(cli::cmd_distance(dir / "x.csv", dir / "y.csv", robust), InfeasibleError);

  cli::Options nasa;
  nasa.mode = cli::Mode::NasaEuclidean;
  nasa.lambda = 50.0;
  CHECK(cli::cmd_distance(dir / "x.csv", dir / "y.csv", nasa).at("converged") == true);
}

TEST_CASE("solve") {
  const auto dir = oracle::scratch_dir("cli_solve");
  spit(dir / "zero.csv", "0,0\n0,0\n");
  auto o = robust_opts(2.0, 1.0, 1);
  o.out = dir / "plan.csv";
  cli::cmd_solve(dir / "zero.csv", o);
  CHECK(slurp(dir / "plan.csv") == "0.25,0.25\n0.25,0.25\n");

  spit(dir / "anti.csv", "0,1\n1,0\n");
  cli::Options s;
  s.mode = cli::Mode::Sinkhorn;
  s.lambda = 1.0;
  s.tol = 1e-12;
  const double e = std::exp(-1.0);
  CHECK(cli::cmd_solve(dir / "anti.csv", s).at("value").get<double>() ==
        doctest::Approx(e / (1 + e)).epsilon(1e-9));

  spit(dir / "ragged.csv", "0,1\n1\n");
  CHECK_THROWS_AS(cli::cmd_solve(dir / "ragged.csv", s), InputError);
  cli::Options none;
  CHECK_THROWS_AS(cli::cmd_solve(dir / "anti.csv", none), InputError);  // robust needs z or T
}

TEST_CASE("detect") {
  const auto dir = oracle::scratch_dir("cli_detect");
  cli::cmd_gen("gaussian(n=300;dim=10)", 1, dir / "clean.csv");
  cli::cmd_gen("gaussian(n=285;dim=10)+sphere(n=15;radius=100;dim=10;outlier)", 2,
               dir / "dirty.csv", dir / "truth.txt");
  cli::Options o;
  o.auto_scale = true;
  o.truth = dir / "truth.txt";
  o.out = dir / "flagged.txt";
  const auto r = cli::cmd_detect(dir / "clean.csv", dir / "dirty.csv", o);
  CHECK(r.at("outlier_recall") == 1.0);
  // every far point is flagged; inliers without a close clean neighbour can
  // be flagged too, so this is containment rather than equality
  const auto flagged = io::read_index_set(dir / "flagged.txt");
  for (std::size_t t : io::read_index_set(dir / "truth.txt")) CHECK(flagged.count(t) == 1);

  // clean copy as the dirty set: nothing is flagged
  o.truth.reset();
  const auto same = cli::cmd_detect(dir / "clean.csv", dir / "clean.csv", o);
  CHECK(same.at("flagged_count") == 0);
  CHECK_FALSE(same.has("outlier_recall"));

  o.method = DetectMethod::Baseline;
  o.truth = dir / "truth.txt";
  CHECK(cli::cmd_detect(dir / "clean.csv", dir / "dirty.csv", o).at("outlier_recall") == 1.0);

  cli::Options plain;  // the estimated z is far below lambda/(beta-1)
  CHECK_THROWS_AS(cli::cmd_detect(dir / "clean.csv", dir / "dirty.csv", plain), InfeasibleError);
  spit(dir / "tiny.csv", "0\n1\n2\n");
  CHECK_THROWS_AS(cli::cmd_detect(dir / "tiny.csv", dir / "tiny.csv", o), InputError);
}

TEST_CASE("exit codes") {
  const auto dir = oracle::scratch_dir("cli_exit");
  spit(dir / "anti.csv", "0,1\n1,0\n");
  spit(dir / "ragged.csv", "0,1\n1\n");
  const std::string d = dir.string() + "/";
  CHECK(run_cli("solve " + d + "anti.csv --mode exact") == 0);
  CHECK(run_cli("solve " + d + "anti.csv --T 2 --report " + d + "rep.txt") == 0);
  CHECK(fs::exists(dir / "rep.txt.json"));
  CHECK(run_cli("solve " + d + "ragged.csv --mode exact") == 2);
  CHECK(run_cli("solve " + d + "missing.csv --mode exact") == 2);
  CHECK(run_cli("solve " + d + "anti.csv --mode warp") == 2);
  CHECK(run_cli("solve " + d + "anti.csv --bogus") == 2);
  CHECK(run_cli("solve " + d + "anti.csv --beta 0.5 --T 1") == 2);
  CHECK(run_cli("solve " + d + "anti.csv --z 3") == 3);
  spit(dir / "huge.csv", "1e200,0\n-1e200,0\n");
  CHECK(run_cli("distance " + d + "huge.csv " + d + "huge.csv --mode exact") == 4);
  CHECK(run_cli("gen --spec 'gaussian(n=3;dim=2)' --out " + d + "g.csv") == 0);
  CHECK(run_cli("gen --spec 'bogus' --out " + d + "g.csv") == 2);
}
