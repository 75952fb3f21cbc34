#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "betaot/errors.hpp"

namespace betaot {

/// First and second derivative of the conjugate generator at one point.
struct ConjugateDerivs {
  double first;
  double second;
};

/// Separable Legendre-type regularizer: the beta-potential, the
/// Boltzmann-Shannon entropy, or the squared Euclidean norm.
///
/// Primal generator phi, its derivative, and the derivatives of the Fenchel
/// conjugate psi are evaluated element-wise. The beta-potential has a
/// conjugate domain bounded below by 1/(1-beta); psi' and psi'' are extended
/// by 0 at (and only at) that boundary so clamped dual entries map to exact
/// zero mass.
class Potential {
 public:
  enum class Kind { Beta, Shannon, SquaredEuclidean };

  /// Throws DomainError unless beta > 1.
  static Potential beta(double beta);
  static Potential shannon() { return Potential(Kind::Shannon, 0.0); }
  static Potential squared_euclidean() { return Potential(Kind::SquaredEuclidean, 0.0); }

  Kind kind() const noexcept { return kind_; }
  double beta_value() const noexcept { return beta_; }
  std::string name() const;

  /// Lower end of dom psi: 1/(1-beta) for Beta, -inf otherwise.
  double domain_lower_dual() const noexcept { return lower_dual_; }
  /// phi'(0), the value the nonnegativity projection clamps the dual to.
  /// Equals domain_lower_dual() for Beta, -1 for SquaredEuclidean, -inf for Shannon.
  double nonneg_clamp() const noexcept { return clamp_; }
  /// True when dom psi is the whole real line.
  bool is_cofinite() const noexcept { return kind_ != Kind::Beta; }

  double phi(double p) const;
  double phi_prime(double p) const;
  double bregman(double p, double q) const;

  double psi_prime(double t) const {
    switch (kind_) {
      case Kind::Beta: {
        if (t <= lower_dual_) {
          if (t < lower_dual_) domain_fail("psi_prime", t);
          return 0.0;
        }
        const double base = (beta_ - 1.0) * t + 1.0;
        return base <= 0.0 ? 0.0 : std::pow(base, inv_bm1_);
      }
      case Kind::Shannon:
        return std::exp(t);
      case Kind::SquaredEuclidean:
        return t + 1.0;
    }
    return 0.0;
  }

  double psi_second(double t) const {
    switch (kind_) {
      case Kind::Beta: {
        if (t <= lower_dual_) {
          if (t < lower_dual_) domain_fail("psi_second", t);
          return 0.0;
        }
        const double base = (beta_ - 1.0) * t + 1.0;
        return base <= 0.0 ? 0.0 : std::pow(base, second_exp_);
      }
      case Kind::Shannon:
        return std::exp(t);
      case Kind::SquaredEuclidean:
        return 1.0;
    }
    return 0.0;
  }

  /// psi' and psi'' together with a single pow for Beta (psi'' = psi' / base).
  ConjugateDerivs psi_derivs(double t) const {
    if (kind_ == Kind::Beta) {
      if (t <= lower_dual_) {
        if (t < lower_dual_) domain_fail("psi_derivs", t);
        return {0.0, 0.0};
      }
      const double base = (beta_ - 1.0) * t + 1.0;
      if (base <= 0.0) return {0.0, 0.0};
      const double d1 = std::pow(base, inv_bm1_);
      return {d1, d1 / base};
    }
    if (kind_ == Kind::Shannon) {
      const double e = std::exp(t);
      return {e, e};
    }
    return {t + 1.0, 1.0};
  }

 private:
  Potential(Kind kind, double beta);
  [[noreturn]] void domain_fail(const char* what, double t) const;

  Kind kind_;
  double beta_;
  double inv_bm1_ = 0.0;     // 1/(beta-1)
  double second_exp_ = 0.0;  // (2-beta)/(beta-1)
  double lower_dual_;
  double clamp_;
};

}  // namespace betaot
