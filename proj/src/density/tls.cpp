#include <cmath>
#include <numbers>

#include "stable/density.hpp"
#include "stable/error.hpp"

namespace stable {

TLocationScaleParams::TLocationScaleParams(double mu, double nu, double alpha_star)
    : mu_(mu), nu_(nu), alpha_star_(alpha_star) {
  if (!std::isfinite(mu) || !std::isfinite(nu) || !std::isfinite(alpha_star)) {
    throw Error(ErrorCode::NonFiniteInput, "t location-scale parameters must be finite");
  }
  if (!(nu > 0.0)) throw Error(ErrorCode::NonPositiveScale, "t location-scale scale must be positive");
  if (!(alpha_star > 0.0)) throw Error(ErrorCode::InvalidArgument, "t location-scale shape must be positive");
}

double tls_log_pdf(const TLocationScaleParams& p, double x) {
  const double a = p.alpha_star();
  const double z = (x - p.mu()) / p.nu();
  return std::lgamma((a + 1.0) / 2.0) - std::lgamma(a / 2.0) - std::log(p.nu()) -
         0.5 * std::log(a * std::numbers::pi) - 0.5 * (a + 1.0) * std::log1p(z * z / a);
}

double tls_pdf(const TLocationScaleParams& p, double x) { return std::exp(tls_log_pdf(p, x)); }

double tls_variance(const TLocationScaleParams& p) {
  const double a = p.alpha_star();
  if (!(a > 2.0)) throw Error(ErrorCode::VarianceUndefined, "variance requires shape > 2");
  return p.nu() * p.nu() * a / (a - 2.0);
}

}  // namespace stable
