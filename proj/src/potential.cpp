#include "betaot/potential.hpp"

#include <sstream>

namespace betaot {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_nonneg(const char* what, double p) {
  if (!(p >= 0.0)) {
    std::ostringstream os;
    os << what << ": argument " << p << " outside the primal domain [0, inf)";
    throw DomainError(os.str());
  }
}

}  // namespace

Potential::Potential(Kind kind, double beta)
    : kind_(kind), beta_(beta), lower_dual_(kNegInf), clamp_(kNegInf) {
  if (kind == Kind::Beta) {
    inv_bm1_ = 1.0 / (beta - 1.0);
    second_exp_ = (2.0 - beta) / (beta - 1.0);
    lower_dual_ = 1.0 / (1.0 - beta);
    clamp_ = lower_dual_;
  } else if (kind == Kind::SquaredEuclidean) {
    clamp_ = -1.0;
  }
}

Potential Potential::beta(double beta) {
  if (!(beta > 1.0) || !std::isfinite(beta)) {
    std::ostringstream os;
    os << "beta-potential requires beta > 1, got " << beta;
    throw DomainError(os.str());
  }
  return Potential(Kind::Beta, beta);
}

std::string Potential::name() const {
  switch (kind_) {
    case Kind::Beta: {
      std::ostringstream os;
      os << "beta(" << beta_ << ")";
      return os.str();
    }
    case Kind::Shannon:
      return "shannon";
    case Kind::SquaredEuclidean:
      return "squared-euclidean";
  }
  return "?";
}

void Potential::domain_fail(const char* what, double t) const {
  std::ostringstream os;
  os << what << ": dual argument " << t << " below dom psi lower bound " << lower_dual_;
  throw DomainError(os.str());
}

double Potential::phi(double p) const {
  switch (kind_) {
    case Kind::Beta:
      require_nonneg("phi", p);
      return (std::pow(p, beta_) - beta_ * p + beta_ - 1.0) / (beta_ * (beta_ - 1.0));
    case Kind::Shannon:
      require_nonneg("phi", p);
      return p == 0.0 ? 1.0 : p * std::log(p) - p + 1.0;
    case Kind::SquaredEuclidean:
      return 0.5 * (p - 1.0) * (p - 1.0);
  }
  return 0.0;
}

double Potential::phi_prime(double p) const {
  switch (kind_) {
    case Kind::Beta:
      require_nonneg("phi_prime", p);
      return (std::pow(p, beta_ - 1.0) - 1.0) / (beta_ - 1.0);
    case Kind::Shannon:
      require_nonneg("phi_prime", p);
      return p == 0.0 ? kNegInf : std::log(p);
    case Kind::SquaredEuclidean:
      return p - 1.0;
  }
  return 0.0;
}

double Potential::bregman(double p, double q) const {
  switch (kind_) {
    case Kind::Beta: {
      require_nonneg("bregman", p);
      require_nonneg("bregman", q);
      if (p == q) return 0.0;
      const double v = (std::pow(p, beta_) + (beta_ - 1.0) * std::pow(q, beta_) -
                        beta_ * p * std::pow(q, beta_ - 1.0)) /
                       (beta_ * (beta_ - 1.0));
      return v > 0.0 ? v : 0.0;
    }
    case Kind::Shannon: {
      require_nonneg("bregman", p);
      if (!(q > 0.0)) throw DomainError("bregman: KL divergence needs a positive reference");
      if (p == q) return 0.0;
      const double v = (p == 0.0 ? 0.0 : p * std::log(p / q)) - p + q;
      return v > 0.0 ? v : 0.0;
    }
    case Kind::SquaredEuclidean:
      return 0.5 * (p - q) * (p - q);
  }
  return 0.0;
}

}  // namespace betaot
