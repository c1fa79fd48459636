#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "stable/density.hpp"
#include "stable/error.hpp"
#include "density/zolotarev_kernel.hpp"

namespace stable {

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

using std::numbers::pi;

constexpr double kTol = 1e-11;
constexpr double kErrorCap = 1e-8;

double standard_integral_branch(double alpha, double beta, double y) {
  if (y < 0.0) return standard_integral_branch(alpha, -beta, -y);
  const detail::ZolotarevKernel k(alpha, beta, y);
  if (k.empty()) return 0.0;  // alpha < 1, beta = -1: no mass right of the mode
  const double prefactor = alpha / (pi * std::abs(alpha - 1.0) * y);
  const double abs_tol = 0.1 * kErrorCap / prefactor;
  double err = 0.0;
  const double total = detail::integrate_from_nearer_end(k, [&](auto log_g, double a, double b, bool inc) {
    return detail::integrate_g_exp_g(log_g, a, b, inc, kTol, abs_tol, err);
  });
  if (err * prefactor > kErrorCap) {
    throw Error(ErrorCode::QuadratureNoConvergence,
                "Zolotarev density: error estimate " + sci(err * prefactor));
  }
  return prefactor * total;
}

double standard_mode_value(double alpha, double beta) {
  const double t = beta * std::tan(pi * alpha / 2.0);
  const double theta0 = std::atan(t) / alpha;
  return std::tgamma(1.0 + 1.0 / alpha) * std::cos(theta0) /
         (pi * std::pow(1.0 + t * t, 1.0 / (2.0 * alpha)));
}

void require_alpha_not_one(const StableParams& p) {
  if (p.alpha_is_one()) {
    throw Error(ErrorCode::UnsupportedAlpha, "Zolotarev density is defined for alpha != 1");
  }
}

}  // namespace

double zolotarev_mode_value(const StableParams& p) {
  require_alpha_not_one(p);
  return standard_mode_value(p.alpha(), p.beta()) / p.nu();
}

double zolotarev_integral_branch(const StableParams& p, double s) {
  require_alpha_not_one(p);
  const double y = (s - p.mu()) / p.nu();
  if (std::abs(y) < kModeSwitchEps) {
    throw Error(ErrorCode::NearModeInstability, "point lies inside the mode band; use the s = mu branch");
  }
  return standard_integral_branch(p.alpha(), p.beta(), y) / p.nu();
}

double pdf_zolotarev(const StableParams& p, double s) {
  if (p.alpha_is_one() && p.beta() == 0.0) return pdf_closed(p, s);
  require_alpha_not_one(p);
  const double y = (s - p.mu()) / p.nu();
  if (std::abs(y) < kModeSwitchEps) return zolotarev_mode_value(p);
  return standard_integral_branch(p.alpha(), p.beta(), y) / p.nu();
}

double pdf(const StableParams& p, double s) {
  if (has_closed_form(p)) return pdf_closed(p, s);
  if (p.alpha_is_one()) return pdf_fft(p)(s);
  return pdf_zolotarev(p, s);
}

}  // namespace stable
