#include <cmath>
#include <numbers>

#include "stable/density.hpp"
#include "stable/error.hpp"

namespace stable {

namespace {

using std::numbers::pi;

void require_moment_alpha(const StableParams& params) {
  if (params.alpha_is_one()) {
    throw Error(ErrorCode::MomentUndefined, "fractional moments are given for alpha != 1 only");
  }
}

// Gamma(1 - p/a) * nu^p |cos theta|^(-p/a)
double flom_common(const StableParams& params, double p, double theta) {
  const double a = params.alpha();
  const double log_scale = p * std::log(params.nu()) - (p / a) * std::log(std::abs(std::cos(theta)));
  return std::exp(std::lgamma(1.0 - p / a) + log_scale);
}

}  // namespace

double flom_signed(const StableParams& params, double p) {
  require_moment_alpha(params);
  const double a = params.alpha();
  const bool admissible = (p > -2.0 && p < -1.0) || (p > -1.0 && p < a);
  if (!admissible || p == 0.0) {
    throw Error(ErrorCode::MomentUndefined, "signed moment order outside (-2, -1) U (-1, alpha)");
  }
  const double theta = skew_angle(a, params.beta());
  return flom_common(params, p, theta) * std::sin(p * theta / a) / (std::tgamma(1.0 - p) * std::sin(p * pi / 2.0));
}

double flom_abs(const StableParams& params, double p) {
  require_moment_alpha(params);
  const double a = params.alpha();
  if (!(p > -1.0 && p < a) || p == 0.0) {
    throw Error(ErrorCode::MomentUndefined, "absolute moment order outside (-1, alpha)");
  }
  const double theta = skew_angle(a, params.beta());
  // 1 / (Gamma(1 - p) cos(p pi / 2)) written as 2 Gamma(p) sin(p pi / 2) / pi,
  // which has no 0/0 at p = 1
  return flom_common(params, p, theta) * std::cos(p * theta / a) * 2.0 * std::tgamma(p) * std::sin(p * pi / 2.0) / pi;
}

LogMoments log_moments_theoretical(const StableParams& p) {
  const double a = p.alpha();
  double theta = 0.0;
  if (!p.symmetric()) {
    if (p.alpha_is_one()) {
      throw Error(ErrorCode::UnsupportedAlpha, "log-moments of skewed alpha = 1 laws are not available");
    }
    theta = skew_angle(a, p.beta());
  }
  // E log|S| with the dispersion nu^a inside the logarithm.
  const double m1 = kPhi0 * (1.0 - 1.0 / a) + std::log(p.nu()) - std::log(std::abs(std::cos(theta))) / a;
  const double m2 = kPhi1 * (0.5 + 1.0 / (a * a)) - theta * theta / (a * a);
  // third cumulant of log|S|: psi''(1) (1 - 1/a^3), psi''(1) = -2 zeta(3)
  const double m3 = -2.0 * kPhi3 * (1.0 - 1.0 / (a * a * a));
  return {m1, m2, m3};
}

}  // namespace stable
