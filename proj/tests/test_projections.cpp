#include <cmath>
#include <random>

#include "betaot/projections.hpp"
#include "doctest.h"
#include "support/convert.hpp"

using namespace betaot;

TEST_CASE("clamp_dual") {
  const auto b12 = Potential::beta(1.2);
  CHECK(clamp_dual(Matrix::from_rows({{-7}}), b12)(0, 0) == doctest::Approx(-5.0));
  CHECK(clamp_dual(Matrix::from_rows({{-3}}), b12)(0, 0) == -3.0);
  const auto x = Matrix::from_rows({{-1e300, 0.0}, {-7.0, 4.0}});
  CHECK(clamp_dual(x, Potential::shannon()) == x);
  CHECK(clamp_dual(x, Potential::squared_euclidean())(0, 0) == -1.0);
}

TEST_CASE("row and column Newton decrements") {
  const auto b2 = Potential::beta(2.0);
  auto tau = row_newton_decrement(Matrix::from_rows({{0, 0}}), b2);
  REQUIRE(tau.size() == 1);
  CHECK(tau[0] == doctest::Approx(0.5));  // (2 - 1) / 2

  auto sigma = col_newton_decrement(Matrix::from_rows({{0}, {0}}), b2);
  REQUIRE(sigma.size() == 1);
  CHECK(sigma[0] == doctest::Approx(0.5));

  // row sums already 1/m: psi'(t) = t + 1 = 1/4 per entry, m = 2, n = 2
  const Matrix settled = Matrix::from_rows({{-0.75, -0.75}, {-0.75, -0.75}});
  for (double v : row_newton_decrement(settled, b2)) CHECK(v == doctest::Approx(0.0));
  for (double v : col_newton_decrement(settled, b2)) CHECK(v == doctest::Approx(0.0));

  // a fully clamped row has a zero denominator: decrement 0
  const auto b12 = Potential::beta(1.2);
  const double lo = b12.domain_lower_dual();
  tau = row_newton_decrement(Matrix::from_rows({{lo, lo, lo}, {0, 0, 0}}), b12);
  CHECK(tau[0] == 0.0);
  CHECK(tau[1] != 0.0);

  CHECK_THROWS_AS(row_newton_decrement(Matrix::from_rows({{-6}}), b12), DomainError);
}

TEST_CASE("truncation") {
  const auto b2 = Potential::beta(2.0);
  // m = 2 -> phi'(1/2) = -0.5
  auto t = truncate_row_decrement({1.0, 0.75}, Matrix::from_rows({{3, 0}, {0, 0}}), b2);
  CHECK(t[0] == doctest::Approx(3.5));
  CHECK(t[1] == doctest::Approx(0.75));
  t = truncate_row_decrement({10.0, 10.0}, Matrix::from_rows({{3, 0}, {0, 0}}), b2);
  CHECK(t[0] == 10.0);
  CHECK(t[1] == 10.0);
  // column mirror on the transpose
  auto s = truncate_col_decrement({1.0, 0.75}, Matrix::from_rows({{3, 0}, {0, 0}}).transposed(), b2);
  CHECK(s[0] == doctest::Approx(3.5));
  CHECK(s[1] == doctest::Approx(0.75));
}

TEST_CASE("apply_row and apply_col") {
  auto a = apply_row(Matrix(2, 2, 0.0), {0.75, 0.75});
  for (double v : a.values()) CHECK(v == -0.75);
  const auto x = Matrix::from_rows({{2, 3}});
  CHECK(apply_row(x, {0.0}) == x);
  CHECK(apply_row(x, {1.0}) == Matrix::from_rows({{1, 2}}));
  CHECK(apply_col(x, {1.0, 2.0}) == Matrix::from_rows({{1, 1}}));
  CHECK_THROWS_AS(apply_row(x, {1.0, 2.0}), InputError);
}

TEST_CASE("property: cap enforcement after a truncated step") {
  std::mt19937_64 rng(201);
  std::uniform_real_distribution<double> ub(1.1, 2.5), uth(-8.0, 3.0);
  std::uniform_int_distribution<int> us(1, 30);
  for (int k = 0; k < 200; ++k) {
    const auto pot = Potential::beta(ub(rng));
    const std::size_t m = us(rng), n = us(rng);
    Matrix tt(m, n);
    for (double& v : tt.values()) v = uth(rng);
    auto st = DualState::from_tilde(tt, pot);
    std::vector<double> tau, scratch;
    truncated_row_step(st, pot, tau, scratch);
    const double cap_r = pot.phi_prime(1.0 / m);
    for (double v : st.theta_star.values()) REQUIRE(v <= cap_r + 1e-12);
    for (double v : st.theta_star.values()) REQUIRE(pot.psi_prime(v) <= 1.0 / m + 1e-12);
    truncated_col_step(st, pot, tau, scratch);
    const double cap_c = pot.phi_prime(1.0 / n);
    for (double v : st.theta_star.values()) REQUIRE(v <= cap_c + 1e-12);
    for (double v : st.theta_star.values()) REQUIRE(v >= pot.domain_lower_dual());
  }
}

TEST_CASE("property: one untruncated Newton step is exact at beta = 2") {
  // psi' is affine, so without active clamps the row sums hit 1/m exactly.
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto pot = Potential::beta(2.0);
  for (int k = 0; k < 50; ++k) {
    const std::size_t m = 2 + k % 5, n = 3 + k % 7;
    // spread below 1/(mn) keeps the projected row strictly inside the domain
    const double spread = 0.5 / static_cast<double>(m * n);
    Matrix ts(m, n);
    for (double& v : ts.values()) v = 5.0 + spread * u(rng);
    const auto tau = row_newton_decrement(ts, pot);
    const Matrix after = apply_row(ts, tau);
    for (std::size_t i = 0; i < m; ++i) {
      double s = 0.0;
      for (double v : after.row(i)) {
        REQUIRE(v > pot.domain_lower_dual());  // clamp-free
        s += pot.psi_prime(v);
      }
      REQUIRE(std::abs(s - 1.0 / m) <= 1e-12);
    }
  }
}

TEST_CASE("property: clamp idempotence") {
  std::mt19937_64 rng(203);
  std::uniform_real_distribution<double> uth(-20.0, 5.0);
  Matrix x(17, 9);
  for (double& v : x.values()) v = uth(rng);
  for (auto pot : {Potential::beta(1.2), Potential::beta(2.5), Potential::squared_euclidean(),
                   Potential::shannon()}) {
    const Matrix once = clamp_dual(x, pot);
    CHECK(clamp_dual(once, pot) == once);
  }
}

TEST_CASE("property: column operations mirror row operations on the transpose") {
  std::mt19937_64 rng(204);
  std::uniform_real_distribution<double> ub(1.1, 2.5), uth(-6.0, 2.0);
  for (int k = 0; k < 50; ++k) {
    const auto pot = Potential::beta(ub(rng));
    Matrix x(3 + k % 4, 2 + k % 6);
    for (double& v : x.values()) v = uth(rng);
    const Matrix ts = clamp_dual(x, pot);
    const Matrix tsT = ts.transposed();
    const auto tau = row_newton_decrement(ts, pot);
    const auto sigmaT = col_newton_decrement(tsT, pot);
    REQUIRE(tau.size() == sigmaT.size());
    for (std::size_t i = 0; i < tau.size(); ++i) REQUIRE(std::abs(tau[i] - sigmaT[i]) <= 1e-12);
    const auto tr = truncate_row_decrement(tau, ts, pot);
    const auto tc = truncate_col_decrement(sigmaT, tsT, pot);
    for (std::size_t i = 0; i < tr.size(); ++i) REQUIRE(std::abs(tr[i] - tc[i]) <= 1e-12);
    const Matrix r = apply_row(x, tr).transposed();
    const Matrix c = apply_col(x.transposed(), tc);
    for (std::size_t q = 0; q < r.size(); ++q)
      REQUIRE(std::abs(r.values()[q] - c.values()[q]) <= 1e-12);
  }
}
