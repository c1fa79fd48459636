#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "estimators/common.hpp"

namespace stable {

namespace {

using std::numbers::pi;

struct LogStats {
  double mean;
  double var;
};

// Mean and variance of log|x|. Exact zeros are dropped (with a warning) as
// long as they are at most 0.1% of the values.
LogStats log_abs_stats(const std::vector<double>& x, Diagnostics& d, const char* what) {
  std::size_t zeros = 0;
  double sum = 0.0;
  for (double v : x) {
    if (v == 0.0) ++zeros; else sum += std::log(std::abs(v));
  }
  if (zeros > 0) {
    if (static_cast<double>(zeros) > 0.001 * static_cast<double>(x.size())) {
      std::ostringstream os;
      os << zeros << " exact zeros in the " << what << " sequence";
      throw Error(ErrorCode::LogOfZero, os.str());
    }
    std::ostringstream os;
    os << "dropped " << zeros << " exact zeros from the " << what << " sequence";
    detail::warn(d, ErrorCode::LogOfZero, os.str());
  }
  const double n = static_cast<double>(x.size() - zeros);
  const double mean = sum / n;
  double ss = 0.0;
  for (double v : x) {
    if (v == 0.0) continue;
    const double e = std::log(std::abs(v)) - mean;
    ss += e * e;
  }
  return {mean, ss / (n - 1.0)};
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return detail::sorted_quantile(v, 0.5);
}

}  // namespace

double alpha_from_log_m2(double m2) {
  const double arg = std::max(m2 / kPhi1 - 0.5, 1e-6);
  return std::min(2.0, 1.0 / std::sqrt(arg));
}

EstimationResult estimate_logmoments(std::span<const double> sample, const LogMomentsConfig& cfg) {
  detail::require_size(sample, 300, "log-moment estimator");
  detail::require_finite(sample);
  Diagnostics diag;

  // alpha from the pair differences, which are symmetric with zero location
  const LogStats sym = log_abs_stats(symmetrize(sample), diag, "symmetrized");
  const double alpha = alpha_from_log_m2(sym.var);

  // theta and the dispersion from the centred triples; their skewness is
  // beta (2 - 2^a) / (2 + 2^a) and their dispersion (2 + 2^a) nu^a
  const LogStats cen = log_abs_stats(center(sample), diag, "centred");
  double theta2 = (kPhi1 / 2.0 - cen.var) * alpha * alpha + kPhi1;
  if (theta2 < 0.0) theta2 = 0.0;
  double theta = std::sqrt(theta2);
  // admissible skew angles satisfy |theta| <= min(alpha, 2 - alpha) pi / 2
  const double theta_max = std::min(alpha, 2.0 - alpha) * pi / 2.0;
  if (theta > theta_max) {
    std::ostringstream os;
    os << "skew angle " << theta << " above " << theta_max << "; capped";
    detail::warn(diag, ErrorCode::BetaOutOfRange, os.str());
    theta = theta_max;
  }

  double beta = 0.0;
  const double tan_a = std::tan(alpha * pi / 2.0);
  const double factor_den = 2.0 - std::pow(2.0, alpha);
  if (std::abs(factor_den) < 1e-9 || std::abs(tan_a) > 1e12) {
    detail::warn(diag, ErrorCode::AlphaNearOne,
                 "skewness is not identifiable from the centred data at this alpha; beta set to 0");
  } else {
    const double beta0 = std::tan(theta) / tan_a;
    beta = std::abs(beta0) * std::abs((2.0 + std::pow(2.0, alpha)) / factor_den);
    const double md = median_of({sample.begin(), sample.end()});
    const auto [mn, mx] = std::minmax_element(sample.begin(), sample.end());
    if (std::abs(*mx - md) < std::abs(*mn - md)) beta = -beta;
    if (beta == 0.0) beta = 0.0;  // no negative zero
    beta = detail::clamp_beta(beta, diag);
  }

  const double cos_t = std::abs(std::cos(theta));
  const double disp_c = cos_t * std::exp((cen.mean - kPhi0) * alpha + kPhi0);
  double nu = 0.0;
  if (cfg.scale == ScaleInversion::Consistent) {
    nu = std::pow(disp_c / (2.0 + std::pow(2.0, alpha)), 1.0 / alpha);
  } else {
    nu = disp_c / std::abs(2.0 - std::pow(2.0, 1.0 / alpha));
  }

  double mu = 0.0;
  const double loc_factor = 2.0 - std::pow(2.0, 1.0 / alpha);
  if (std::abs(loc_factor) < 1e-3) {
    detail::warn(diag, ErrorCode::AlphaNearOne,
                 "deskewed location is degenerate near alpha = 1; mu from the sample median");
    mu = median_of({sample.begin(), sample.end()});
  } else {
    mu = median_of(deskew(sample, alpha)) / loc_factor;
  }

  if (!std::isfinite(nu) || !(nu > 0.0)) {
    throw Error(ErrorCode::NonPositiveScale, "log-moment scale estimate is not positive");
  }
  return {StableParams(alpha, beta, nu, mu), Method::LogMoments, std::move(diag)};
}

}  // namespace stable
