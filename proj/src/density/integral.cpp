// tanh_sinh in Boost 1.74 can land exactly on an endpoint and assert; the
// integrands here are defined there.
#define BOOST_DISABLE_ASSERTS
#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "stable/density.hpp"
#include "stable/error.hpp"

namespace stable {

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

using boost::math::quadrature::gauss_kronrod;
using std::numbers::pi;

constexpr double kPanelTol = 1e-12;
constexpr unsigned kMaxDepth = 11;  // 2^11 subdivisions per panel at most
constexpr double kErrorCap = 1e-8;
constexpr int kMaxPanels = 400;

// Standardized density (nu = 1, mu = 0) at y >= 0 from
//   (1/pi) Re int_0^inf exp(-i t y - c t^a) dt,  c = 1 - i beta tan(pi a / 2),
// which is the cosine integral written in complex form. The path is rotated
// onto the ray t = r exp(-i phi). With psi = arg-angle of c, every ray with
// 0 <= alpha*phi < pi/2 - psi keeps Re(c t^a) > 0 and Re(i t y) > 0, so the
// integrand decays along the ray and on the closing arc, and the value is
// unchanged. The oscillation of the real-axis integrand becomes exponential
// damping at rate y sin(phi).
double standard_density(double alpha, double beta, double y) {
  if (y < 0.0) return standard_density(alpha, -beta, -y);

  const double tan_term = beta == 0.0 ? 0.0 : std::tan(pi * alpha / 2.0);
  const std::complex<double> c(1.0, -beta * tan_term);
  const double psi = std::atan(beta * tan_term);
  const double phi = 0.5 * std::min(pi / 2.0, (pi / 2.0 - psi) / alpha);
  const std::complex<double> ray = std::polar(1.0, -phi);
  const std::complex<double> ray_alpha = std::polar(1.0, -alpha * phi);
  const std::complex<double> c_ray = c * ray_alpha;
  const double linear_decay = y * std::sin(phi);
  const double power_decay = c_ray.real();

  auto integrand = [&](double r) {
    const std::complex<double> e =
        std::complex<double>(0.0, -r * y) * ray - c_ray * std::pow(r, alpha);
    return (std::exp(e) * ray).real();
  };
  auto envelope = [&](double r) {
    return std::exp(-r * linear_decay - std::pow(r, alpha) * power_decay);
  };

  double total = 0.0;
  double error_total = 0.0;
  double a = 0.0;
  double b = y > 1.0 ? 1.0 / y : 1.0;
  for (int panel = 0; panel < kMaxPanels; ++panel) {
    double err = 0.0;
    if (panel == 0) {
      // t^alpha is not smooth at the origin; tanh-sinh copes with that
      thread_local boost::math::quadrature::tanh_sinh<double> ts;
      total += ts.integrate(integrand, a, b, kPanelTol, &err);
    } else {
      total += gauss_kronrod<double, 15>::integrate(integrand, a, b, kMaxDepth, kPanelTol, &err);
    }
    error_total += err;
    if (envelope(b) * std::max(b, 1.0) < 1e-18) break;
    a = b;
    b *= 2.0;
  }
  if (error_total > kErrorCap) {
    throw Error(ErrorCode::QuadratureNoConvergence,
                "cosine-integral density: error estimate " + sci(error_total));
  }
  return std::max(0.0, total / pi);
}

}  // namespace

double pdf_integral(const StableParams& p, double s) {
  // at alpha = 1 the skew term is only finite for beta = 0
  if (p.alpha_is_one() && p.beta() != 0.0) {
    throw Error(ErrorCode::UnsupportedAlpha, "cosine-integral density is defined for alpha != 1 or beta = 0");
  }
  return standard_density(p.alpha(), p.beta(), (s - p.mu()) / p.nu()) / p.nu();
}

}  // namespace stable
