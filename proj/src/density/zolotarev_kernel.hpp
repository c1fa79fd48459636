#pragma once

// tanh_sinh in Boost 1.74 can land exactly on an endpoint and assert; the
// integrands here are defined there.
#define BOOST_DISABLE_ASSERTS
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/sin_pi.hpp>
#include <boost/math/special_functions/cos_pi.hpp>
#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <numbers>

namespace stable::detail {

// Zolotarev's representation on the angle phi in (-theta, 1), written with
// the angle w = pi phi / 2 in (-theta0, pi/2), theta0 = arctan(beta tan(pi a/2)) / a.
// For the standard law at y > 0:
//
//   f(y) = a / (pi |a - 1| y) * int g(w) exp(-g(w)) dw,   g = y^(a/(a-1)) U(w),
//   U(w) = cos(a theta0)^(1/(a-1)) (cos w / sin(a (theta0 + w)))^(a/(a-1))
//          * cos(a theta0 + (a - 1) w) / cos w
//
// and y < 0 follows from f(y; beta) = f(-y; -beta). U is monotone on the
// interval (increasing for a < 1, decreasing for a > 1).
struct ZolotarevKernel {
  double alpha;
  double theta0;
  double log_y_power;  // (a/(a-1)) log y
  double log_cos_a_theta0;
  // Endpoint trig values, kept exact where pi rounding would leave ~1e-16
  // residues (theta0 = pi/2 at beta = 1, a < 1; a (theta0 + pi/2) = pi at a = 2).
  double cos_t0, sin_t0;  // theta0
  double cos_a, sin_a;    // a (theta0 + pi/2)
  double cos_b, sin_b;    // a theta0 + (a - 1) pi/2

  ZolotarevKernel(double a, double beta, double y) : alpha(a), log_y_power(a / (a - 1.0) * std::log(y)) {
    using boost::math::cos_pi;
    using boost::math::sin_pi;
    const double t = beta * sin_pi(a / 2.0) / cos_pi(a / 2.0);
    const double cphi = 1.0 / std::sqrt(1.0 + t * t);  // a theta0 = atan(t)
    const double sphi = t * cphi;
    theta0 = std::atan(t) / a;
    log_cos_a_theta0 = std::log(cphi);
    if (a < 1.0 && std::abs(beta) == 1.0) {
      cos_t0 = 0.0;
      sin_t0 = beta;
    } else {
      cos_t0 = std::cos(theta0);
      sin_t0 = std::sin(theta0);
    }
    sin_a = sphi * cos_pi(a / 2.0) + cphi * sin_pi(a / 2.0);
    cos_a = cphi * cos_pi(a / 2.0) - sphi * sin_pi(a / 2.0);
    sin_b = sphi * cos_pi((a - 1.0) / 2.0) + cphi * sin_pi((a - 1.0) / 2.0);
    cos_b = cphi * cos_pi((a - 1.0) / 2.0) - sphi * sin_pi((a - 1.0) / 2.0);
  }

  double lo() const { return -theta0; }
  static constexpr double hi() { return std::numbers::pi / 2.0; }
  bool empty() const { return !(hi() - lo() > 1e-15); }

  double width() const { return hi() - lo(); }

  double log_g(double w) const {
    return log_g_from(std::cos(w), std::sin(alpha * (theta0 + w)),
                      std::cos(alpha * theta0 + (alpha - 1.0) * w), w);
  }

  // Same function of the offset from one end. The band that matters can be
  // far narrower than the rounding of w near the ends, so the factors that
  // vanish there are evaluated from the offset directly.
  double log_g_lo(double u) const {
    const double c = (alpha - 1.0) * u;
    return log_g_from(cos_t0 * std::cos(u) + sin_t0 * std::sin(u), std::sin(alpha * u),
                      cos_t0 * std::cos(c) - sin_t0 * std::sin(c), lo() + u);
  }
  double log_g_hi(double v) const {
    const double c = (alpha - 1.0) * v;
    return log_g_from(std::sin(v), sin_a * std::cos(alpha * v) - cos_a * std::sin(alpha * v),
                      cos_b * std::cos(c) + sin_b * std::sin(c), hi() - v);
  }

  // true when g = 1 is reached in the upper half of the interval
  bool peak_near_hi() const {
    const double m = log_g(0.5 * (lo() + hi()));
    return increasing() ? m < 0.0 : m > 0.0;
  }

  double log_g_from(double cw, double sw, double cr, double w) const {
    if (!(cw > 0.0) || !(sw > 0.0) || !(cr > 0.0)) {
      const bool near_left = (w - lo()) < (hi() - w);
      const bool goes_to_zero = (alpha < 1.0) == near_left;
      return goes_to_zero ? -std::numeric_limits<double>::infinity()
                          : std::numeric_limits<double>::infinity();
    }
    const double e = alpha / (alpha - 1.0);
    return log_y_power + log_cos_a_theta0 / (alpha - 1.0) + e * (std::log(cw) - std::log(sw)) +
           std::log(cr) - std::log(cw);
  }

  bool increasing() const { return alpha < 1.0; }
};

/// Gauss-Kronrod first; tanh-sinh when the GK error estimate is above both
/// tol * |result| and abs_tol (algebraic endpoint behaviour at small alpha).
/// Returns the better of the two.
template <class F>
double integrate_panel(const F& f, double a, double b, double tol, double abs_tol, double& err) {
  using boost::math::quadrature::gauss_kronrod;
  double gk_err = 0.0;
  // one unrefined panel to turn abs_tol into a relative target for the refinement
  const double rough = std::abs(gauss_kronrod<double, 21>::integrate(f, a, b, 0, tol, &gk_err));
  const double rel = rough > 0.0 ? std::max(tol, abs_tol / rough) : tol;
  const double gk = gauss_kronrod<double, 21>::integrate(f, a, b, 11, rel, &gk_err);
  if (gk_err <= std::max(tol * std::abs(gk), abs_tol) || gk_err < 1e-300) {
    err = gk_err;
    return gk;
  }
  thread_local boost::math::quadrature::tanh_sinh<double> ts;
  double ts_err = 0.0;
  const double v = ts.integrate(f, a, b, tol, &ts_err);
  if (ts_err < gk_err) {
    err = ts_err;
    return v;
  }
  err = gk_err;
  return gk;
}

/// Point in [a, b] where a monotone log g crosses `level`.
template <class LogG>
double level_crossing(const LogG& log_g, double a, double b, bool increasing, double level) {
  for (int it = 0; it < 200 && b - a > 1e-15 * std::max(std::abs(a), std::abs(b)); ++it) {
    const double m = 0.5 * (a + b);
    if ((log_g(m) < level) == increasing) a = m; else b = m;
  }
  return 0.5 * (a + b);
}

// Outside [-40, 3.8] g exp(-g) and 1 - exp(-g) are below 1e-17, so the
// quadrature only has to resolve the band between them, however narrow.
// The band is cut at intermediate levels too: each panel then sees g over a
// bounded range and a coarse rule cannot step over a feature of h.
inline constexpr double kLogGLevels[] = {-40.0, -20.0, -8.0, -3.0, -1.0, 0.0,
                                         1.0,   2.0,   2.5,  3.0,  3.4,  3.8};

/// Sum of h over the panels between consecutive level crossings of log g.
/// `first` gets the lowest crossing.
template <class LogG, class H>
double integrate_levels(const LogG& log_g, const H& h, double lo, double hi, bool increasing,
                        double tol, double abs_tol, double& err, double& first) {
  constexpr std::size_t n = std::size(kLogGLevels);
  double pts[n];
  for (std::size_t i = 0; i < n; ++i) pts[i] = level_crossing(log_g, lo, hi, increasing, kLogGLevels[i]);
  first = pts[0];
  std::sort(pts, pts + n);
  double total = 0.0;
  err = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(pts[i + 1] > pts[i])) continue;
    double e = 0.0;
    total += integrate_panel(h, pts[i], pts[i + 1], tol, abs_tol / (n - 1), e);
    err += e;
  }
  return total;
}

/// int_lo^hi g exp(-g) dw for monotone g = exp(log_g).
template <class LogG>
double integrate_g_exp_g(const LogG& log_g, double lo, double hi, bool increasing, double tol,
                         double abs_tol, double& err) {
  auto h = [&](double w) {
    const double lg = log_g(w);
    if (!std::isfinite(lg) || lg > 700.0) return 0.0;
    return std::exp(lg - std::exp(lg));
  };
  double first = 0.0;
  return integrate_levels(log_g, h, lo, hi, increasing, tol, abs_tol, err, first);
}

/// int_lo^hi exp(-g) dw for monotone g = exp(log_g).
template <class LogG>
double integrate_exp_minus_g(const LogG& log_g, double lo, double hi, bool increasing, double tol,
                             double abs_tol, double& err) {
  auto h = [&](double w) {
    const double lg = log_g(w);
    if (lg == -std::numeric_limits<double>::infinity()) return 1.0;
    if (lg > 700.0) return 0.0;
    return std::exp(-std::exp(lg));
  };
  double t_small = 0.0;
  const double band = integrate_levels(log_g, h, lo, hi, increasing, tol, abs_tol, err, t_small);
  // exp(-g) is 1 up to rounding on the small-g side
  const double plateau = increasing ? t_small - lo : hi - t_small;
  return plateau + band;
}

/// Runs `integrate(log_g, 0, width, increasing)` in the offset coordinate
/// measured from whichever end the peak is nearer to.
template <class Integrate>
double integrate_from_nearer_end(const ZolotarevKernel& k, Integrate integrate) {
  if (k.peak_near_hi()) {
    return integrate([&k](double v) { return k.log_g_hi(v); }, 0.0, k.width(), !k.increasing());
  }
  return integrate([&k](double u) { return k.log_g_lo(u); }, 0.0, k.width(), k.increasing());
}

}  // namespace stable::detail
