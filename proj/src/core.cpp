#include "stable/core.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "stable/error.hpp"

namespace stable {

namespace {

std::string describe(double alpha, double beta, double nu, double mu) {
  std::ostringstream os;
  os << "(alpha=" << alpha << ", beta=" << beta << ", nu=" << nu << ", mu=" << mu << ")";
  return os.str();
}

}  // namespace

StableParams::StableParams(double alpha, double beta, double nu, double mu)
    : alpha_(alpha), beta_(beta), nu_(nu), mu_(mu) {
  if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(nu) ||
      !std::isfinite(mu)) {
    throw Error(ErrorCode::NonFiniteInput, "non-finite parameter " + describe(alpha, beta, nu, mu));
  }
  if (!(alpha > 0.0 && alpha <= 2.0)) {
    throw Error(ErrorCode::AlphaOutOfRange, "alpha must lie in (0, 2] " + describe(alpha, beta, nu, mu));
  }
  if (!(beta >= -1.0 && beta <= 1.0)) {
    throw Error(ErrorCode::BetaOutOfRange, "beta must lie in [-1, 1] " + describe(alpha, beta, nu, mu));
  }
  if (!(nu > 0.0)) {
    throw Error(ErrorCode::NonPositiveScale, "nu must be positive " + describe(alpha, beta, nu, mu));
  }
}

StableParams validate(double alpha, double beta, double nu, double mu) {
  return StableParams(alpha, beta, nu, mu);
}

StandardShift standardize(const StableParams& p) {
  if (p.alpha_is_one()) {
    return {p.nu(), p.mu() + p.nu() * p.beta() * (2.0 / std::numbers::pi) * std::log(p.nu())};
  }
  return {p.nu(), p.mu()};
}

StandardShift relate(const StableParams& p, double nu_prime, double mu_prime) {
  if (!(nu_prime > 0.0) || !std::isfinite(mu_prime)) {
    throw Error(ErrorCode::NonPositiveScale, "reference scale must be positive");
  }
  const double a = p.nu() / nu_prime;
  double b = p.mu() - mu_prime * a;
  if (p.alpha_is_one()) b += p.nu() * p.beta() * (2.0 / std::numbers::pi) * std::log(a);
  return {a, b};
}

ZolotarevParams to_zolotarev(const StableParams& p) {
  const double alpha = p.alpha();
  if (p.alpha_is_one()) {
    return {p.beta(), 2.0 / std::numbers::pi * p.nu(), 0.0};
  }
  const double k = alpha - 1.0 + sign(1.0 - alpha);
  const double t = std::tan(std::numbers::pi * alpha / 2.0);
  // K(2) = 0 and beta has no effect at alpha = 2
  const double beta2 = k == 0.0 ? 0.0 : 2.0 / (std::numbers::pi * k) * std::atan(p.beta() * t);
  const double nu2 = p.nu() * std::pow(1.0 + p.beta() * p.beta() * t * t, 1.0 / (2.0 * alpha));
  return {beta2, nu2, k};
}

void from_zolotarev(double alpha, const ZolotarevParams& z, double& beta, double& nu) {
  if (is_alpha_one(alpha)) {
    beta = z.beta2;
    nu = z.nu2 * std::numbers::pi / 2.0;
    return;
  }
  const double t = std::tan(std::numbers::pi * alpha / 2.0);
  beta = std::tan(std::numbers::pi * z.k_alpha * z.beta2 / 2.0) / t;
  nu = z.nu2 / std::pow(1.0 + beta * beta * t * t, 1.0 / (2.0 * alpha));
}

double zeta_shift(const StableParams& p) {
  if (p.alpha_is_one()) return p.mu();
  return p.mu() + p.beta() * p.nu() * std::tan(std::numbers::pi * p.alpha() / 2.0);
}

}  // namespace stable
