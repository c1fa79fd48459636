#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "estimators/common.hpp"

namespace stable {

namespace {

using std::numbers::pi;

constexpr double kModulusEps = 1e-12;
constexpr double kAlphaOneBand = 0.01;
constexpr double kPhaseStep = 0.05;

double log_modulus(const CfSource& cf, double u) {
  const double m = std::abs(cf(u));
  if (!(m > kModulusEps) || !(m < 1.0 - kModulusEps)) {
    std::ostringstream os;
    os << "|phi(" << u << ")| = " << m << " too close to 0 or 1";
    throw Error(ErrorCode::EcfDegenerate, os.str());
  }
  return std::log(m);
}

// arctan(Im/Re) at each u (ascending), continued from Y(0) = 0 along a grid
// fine enough that consecutive values differ by less than pi/2.
std::vector<double> unwrapped_phase(const CfSource& cf, const std::vector<double>& us) {
  std::vector<double> out;
  out.reserve(us.size());
  double prev_u = 0.0;
  double prev = 0.0;
  auto step_to = [&](double u) {
    const ComplexValue v = cf(u);
    double y = std::atan(v.imag() / v.real());
    if (!std::isfinite(y)) y = std::copysign(pi / 2.0, v.imag());
    while (y - prev > pi / 2.0) y -= pi;
    while (y - prev < -pi / 2.0) y += pi;
    prev = y;
    prev_u = u;
  };
  for (double u : us) {
    const int steps = static_cast<int>(std::ceil((u - prev_u) / kPhaseStep));
    const double from = prev_u;
    for (int s = 1; s < steps; ++s) step_to(from + (u - from) * s / steps);
    step_to(u);
    out.push_back(prev);
  }
  return out;
}

struct LineFit {
  double intercept;
  double slope;
};

LineFit ols_line(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const double slope = sxy / sxx;
  return {my - slope * mx, slope};
}

// Least squares z = c1 a + c2 b without intercept.
void ols_two(const std::vector<double>& a, const std::vector<double>& b, const std::vector<double>& z,
             double& c1, double& c2) {
  double aa = 0, ab = 0, bb = 0, az = 0, bz = 0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    aa += a[i] * a[i];
    ab += a[i] * b[i];
    bb += b[i] * b[i];
    az += a[i] * z[i];
    bz += b[i] * z[i];
  }
  const double det = aa * bb - ab * ab;
  if (!(std::abs(det) > 0.0)) {
    throw Error(ErrorCode::InsufficientRegressionPoints, "phase regression is singular");
  }
  c1 = (az * bb - bz * ab) / det;
  c2 = (aa * bz - ab * az) / det;
}

// Location and skewness by regressing the unwrapped phase on
//   mu u + beta * w(u),  w(u) = nu^a tan(pi a / 2) u^a        (a != 1)
//                        w(u) = -(2/pi) nu u log u            (a == 1)
void phase_regression(const CfSource& cf, int q, double alpha, double nu, bool as_alpha_one,
                      double& beta, double& mu) {
  if (q < 2) throw Error(ErrorCode::InsufficientRegressionPoints, "need at least two phase points");
  std::vector<double> us(static_cast<std::size_t>(q));
  for (int l = 1; l <= q; ++l) us[static_cast<std::size_t>(l - 1)] = pi * l / 50.0;
  const std::vector<double> z = unwrapped_phase(cf, us);
  std::vector<double> w(us.size());
  for (std::size_t i = 0; i < us.size(); ++i) {
    w[i] = as_alpha_one ? -(2.0 / pi) * nu * us[i] * std::log(us[i])
                        : std::pow(nu, alpha) * std::tan(pi * alpha / 2.0) * std::pow(us[i], alpha);
  }
  ols_two(us, w, z, mu, beta);
}

EstimationResult finish(double alpha, double beta, double nu, double mu, Method method, Diagnostics diag) {
  alpha = detail::clamp_alpha(alpha, diag);
  beta = detail::clamp_beta(beta, diag);
  return {StableParams(alpha, beta, nu, mu), method, std::move(diag)};
}

EstimationResult from_sample(std::span<const double> sample, const EcfConfig& cfg, Method method) {
  detail::require_size(sample, 100, method == Method::Ecf ? "ECF estimator" : "ECF regression");
  cfg.validate();
  const detail::Spread sp = detail::median_iqr(sample);
  std::vector<double> z(sample.size());
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = (sample[i] - sp.median) / sp.iqr;
  const CfSource cf = [&z](double u) { return ecf_empirical(z, u); };
  EstimationResult r = method == Method::Ecf ? estimate_ecf(cf, cfg) : estimate_ecf_regression(cf, cfg);
  const StableParams& p = r.params;
  r.params = detail::rescale(p.alpha(), p.beta(), p.nu(), p.mu(), sp.iqr, sp.median);
  return r;
}

}  // namespace

ComplexValue ecf_empirical(std::span<const double> sample, double u) {
  if (sample.empty()) throw Error(ErrorCode::SampleTooSmall, "empirical CF of an empty sample");
  if (u == 0.0) return {1.0, 0.0};
  double re = 0.0;
  double im = 0.0;
  for (double s : sample) {
    re += std::cos(u * s);
    im += std::sin(u * s);
  }
  const double n = static_cast<double>(sample.size());
  return {re / n, im / n};
}

void EcfConfig::validate() const {
  const bool ok = u1 > 0 && u2 > 0 && u3 > 0 && u4 > 0 && std::isfinite(u1 + u2 + u3 + u4) &&
                  u1 != u2 && u3 != u4;
  if (!ok) throw Error(ErrorCode::InvalidArgument, "ECF points must be positive, finite and pairwise distinct");
  if (m < 1 || q < 1) throw Error(ErrorCode::InvalidArgument, "regression point counts must be positive");
}

EstimationResult estimate_ecf(const CfSource& cf, const EcfConfig& cfg) {
  cfg.validate();
  Diagnostics diag;
  const double l1 = -log_modulus(cf, cfg.u1);
  const double l2 = -log_modulus(cf, cfg.u2);
  const double lu = std::log(cfg.u1 / cfg.u2);
  double alpha = std::log(l1 / l2) / lu;
  // log of the dispersion nu^alpha
  const double log_disp = (std::log(cfg.u1) * std::log(l2) - std::log(cfg.u2) * std::log(l1)) / lu;
  alpha = detail::clamp_alpha(alpha, diag);
  const double nu = std::exp(log_disp / alpha);

  double beta = 0.0;
  double mu = 0.0;
  if (std::abs(alpha - 1.0) < kAlphaOneBand) {
    std::ostringstream os;
    os << "alpha estimate " << alpha << " within " << kAlphaOneBand
       << " of 1; beta and mu from the phase regression";
    detail::warn(diag, ErrorCode::AlphaNearOne, os.str());
    phase_regression(cf, cfg.q, alpha, nu, true, beta, mu);
    // the alpha = 1 parameterization is used for the location
    alpha = 1.0;
  } else {
    const double u3 = std::min(cfg.u3, cfg.u4);
    const double u4 = std::max(cfg.u3, cfg.u4);
    const std::vector<double> y = unwrapped_phase(cf, {u3, u4});
    const double p3 = std::pow(u3, alpha);
    const double p4 = std::pow(u4, alpha);
    mu = (p4 * y[0] - p3 * y[1]) / (u3 * p4 - u4 * p3);
    beta = (u4 * y[0] - u3 * y[1]) /
           (std::pow(nu, alpha) * std::tan(pi * alpha / 2.0) * (u4 * p3 - u3 * p4));
  }
  return finish(alpha, beta, nu, mu, Method::Ecf, std::move(diag));
}

EstimationResult estimate_ecf(std::span<const double> sample, const EcfConfig& cfg) {
  return from_sample(sample, cfg, Method::Ecf);
}

EcfLine ecf_regression_line(const CfSource& cf, int m) {
  if (m < 2) throw Error(ErrorCode::InsufficientRegressionPoints, "need at least two regression points");
  std::vector<double> x, y;
  for (int k = 1; k <= m; ++k) {
    const double u = pi * k / 25.0;
    x.push_back(std::log(u));
    y.push_back(std::log(-2.0 * log_modulus(cf, u)));
  }
  const LineFit f = ols_line(x, y);
  return {f.intercept, f.slope};
}

EstimationResult estimate_ecf_regression(const CfSource& cf, const EcfConfig& cfg) {
  cfg.validate();
  if (cfg.q < 2) throw Error(ErrorCode::InsufficientRegressionPoints, "need at least two phase points");
  Diagnostics diag;
  const EcfLine line = ecf_regression_line(cf, cfg.m);
  double alpha = detail::clamp_alpha(line.slope, diag);
  // intercept = log(2 nu^alpha)
  const double nu = std::pow(std::exp(line.intercept) / 2.0, 1.0 / alpha);
  const bool near_one = std::abs(alpha - 1.0) < kAlphaOneBand;
  if (near_one) {
    std::ostringstream os;
    os << "alpha estimate " << alpha << " within " << kAlphaOneBand << " of 1; alpha = 1 phase model used";
    detail::warn(diag, ErrorCode::AlphaNearOne, os.str());
    alpha = 1.0;
  }
  double beta = 0.0;
  double mu = 0.0;
  phase_regression(cf, cfg.q, alpha, nu, near_one, beta, mu);
  return finish(alpha, beta, nu, mu, Method::EcfRegression, std::move(diag));
}

EstimationResult estimate_ecf_regression(std::span<const double> sample, const EcfConfig& cfg) {
  return from_sample(sample, cfg, Method::EcfRegression);
}

}  // namespace stable
