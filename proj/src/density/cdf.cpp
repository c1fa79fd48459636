#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "density/zolotarev_kernel.hpp"
#include "stable/density.hpp"
#include "stable/error.hpp"

namespace stable {

namespace {

using std::numbers::pi;

// Upper tail P(Y > y) of the standard law, y > 0, alpha != 1, from the
// distribution-function form of the Zolotarev integral:
//   alpha > 1:  P(Y > y) = (1/pi) int exp(-g(w)) dw
//   alpha < 1:  P(Y > y) = (1/pi) (pi/2 + theta0) - (1/pi) int exp(-g(w)) dw
double standard_upper_tail(double alpha, double beta, double y) {
  const detail::ZolotarevKernel k(alpha, beta, y);
  if (k.empty()) return 0.0;
  const double lo = k.lo();
  const double hi = k.hi();
  double err = 0.0;
  const double integral = detail::integrate_from_nearer_end(k, [&err](auto log_g, double a, double b, bool inc) {
    return detail::integrate_exp_minus_g(log_g, a, b, inc, 1e-12, 1e-9 * pi, err);
  });
  if (err / pi > 1e-8) {
    throw Error(ErrorCode::QuadratureNoConvergence, "distribution integral did not converge");
  }
  const double tail = alpha > 1.0 ? integral / pi : (hi - lo - integral) / pi;
  return std::clamp(tail, 0.0, 1.0);
}

// Mass above the mode of the standard law: 1 - F(0) = (pi/2 + theta0) / pi.
double standard_mass_above_mode(double alpha, double beta) {
  const double theta0 = std::atan(beta * std::tan(pi * alpha / 2.0)) / alpha;
  return (pi / 2.0 + theta0) / pi;
}

double standard_cdf(double alpha, double beta, double y) {
  if (y == 0.0) return 1.0 - standard_mass_above_mode(alpha, beta);
  if (y > 0.0) return 1.0 - standard_upper_tail(alpha, beta, y);
  return standard_upper_tail(alpha, -beta, -y);
}

// alpha == 1, beta > 0:
//   F(y) = (1/pi) int_{-pi/2}^{pi/2} exp(-exp(-pi y / (2 beta)) V(t)) dt,
//   V(t) = (2/pi) (pi/2 + beta t) / cos t * exp((pi/2 + beta t) tan t / beta)
double standard_cdf_alpha_one(double beta, double y) {
  if (beta < 0.0) return 1.0 - standard_cdf_alpha_one(-beta, -y);
  const double log_c = -pi * y / (2.0 * beta);
  auto log_g = [&](double t) {
    const double lead = pi / 2.0 + beta * t;
    const double ct = std::cos(t);
    if (!(ct > 0.0) || !(lead > 0.0)) {
      return t < 0.0 ? -std::numeric_limits<double>::infinity()
                     : std::numeric_limits<double>::infinity();
    }
    return log_c + std::log(2.0 / pi) + std::log(lead) - std::log(ct) + lead * std::tan(t) / beta;
  };
  double err = 0.0;
  const double integral = detail::integrate_exp_minus_g(log_g, -pi / 2.0, pi / 2.0, true, 1e-12, 1e-9 * pi, err);
  if (err / pi > 1e-8) {
    throw Error(ErrorCode::QuadratureNoConvergence, "distribution integral did not converge");
  }
  return std::clamp(integral / pi, 0.0, 1.0);
}

}  // namespace

double tail_constant(double alpha) {
  return std::tgamma(alpha) * std::sin(pi * alpha / 2.0) / pi;
}

double cdf(const StableParams& p, double s) {
  if (has_closed_form(p)) return cdf_closed(p, s);
  if (p.alpha_is_one()) {
    const StandardShift t = standardize(p);
    return standard_cdf_alpha_one(p.beta(), (s - t.b) / t.a);
  }
  return standard_cdf(p.alpha(), p.beta(), (s - p.mu()) / p.nu());
}

double quantile(const StableParams& params, double prob) {
  if (!(prob > 0.0 && prob < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "quantile probability must lie in (0, 1)");
  }
  const double nu = params.nu();
  double lo = params.mu() - nu;
  double hi = params.mu() + nu;
  double flo = cdf(params, lo);
  double fhi = cdf(params, hi);
  for (int i = 0; i < 200 && flo > prob; ++i) {
    hi = lo;
    fhi = flo;
    lo = params.mu() - 2.0 * (params.mu() - lo);
    flo = cdf(params, lo);
  }
  for (int i = 0; i < 200 && fhi < prob; ++i) {
    lo = hi;
    flo = fhi;
    hi = params.mu() + 2.0 * (hi - params.mu());
    fhi = cdf(params, hi);
  }
  // Newton steps from the bracket midpoint, falling back to bisection
  // whenever a step leaves the bracket.
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 100; ++it) {
    const double fx = cdf(params, x) - prob;
    if (fx == 0.0) return x;
    if (fx < 0.0) lo = x; else hi = x;
    if (hi - lo <= 1e-12 * (nu + std::abs(x))) break;
    const double d = pdf(params, x);
    double next = d > 0.0 ? x - fx / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 1e-13 * (nu + std::abs(x))) return next;
    x = next;
  }
  return 0.5 * (lo + hi);
}

}  // namespace stable
