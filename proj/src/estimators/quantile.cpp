#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "estimators/common.hpp"
#include "estimators/mcculloch_tables.hpp"

namespace stable {

namespace detail {

Spread median_iqr(std::span<const double> sample) {
  if (sample.empty()) throw Error(ErrorCode::SampleTooSmall, "empty sample");
  require_finite(sample);
  std::vector<double> s(sample.begin(), sample.end());
  std::sort(s.begin(), s.end());
  const double iqr = sorted_quantile(s, 0.75) - sorted_quantile(s, 0.25);
  if (!(iqr > 0.0)) throw Error(ErrorCode::DegenerateSample, "interquartile range is zero");
  return {sorted_quantile(s, 0.5), iqr};
}

StableParams rescale(double alpha, double beta, double nu, double mu, double scale, double shift) {
  if (is_alpha_one(alpha)) {
    // scale * X has an extra -(2/pi) beta nu scale log(scale) in location
    const double loc = scale * mu - (2.0 / std::numbers::pi) * beta * nu * scale * std::log(scale) + shift;
    return StableParams(alpha, beta, scale * nu, loc);
  }
  return StableParams(alpha, beta, scale * nu, scale * mu + shift);
}

double clamp_alpha(double alpha, Diagnostics& d, double lo) {
  if (!std::isfinite(alpha)) {
    throw Error(ErrorCode::NonFiniteInput, "alpha estimate is not finite");
  }
  if (alpha > 2.0 || alpha < lo) {
    std::ostringstream os;
    os << "alpha estimate " << alpha << " clamped to [" << lo << ", 2]";
    warn(d, ErrorCode::AlphaOutOfRange, os.str());
    return std::clamp(alpha, lo, 2.0);
  }
  return alpha;
}

double clamp_beta(double beta, Diagnostics& d) {
  if (!std::isfinite(beta)) {
    warn(d, ErrorCode::BetaOutOfRange, "beta estimate not finite; set to 0");
    return 0.0;
  }
  if (std::abs(beta) > 1.0) {
    std::ostringstream os;
    os << "beta estimate " << beta << " clamped to [-1, 1]";
    warn(d, ErrorCode::BetaOutOfRange, os.str());
    return std::clamp(beta, -1.0, 1.0);
  }
  return beta;
}

}  // namespace detail

SampleQuantiles sample_quantiles(std::span<const double> sample) {
  detail::require_size(sample, 20, "quantile statistics");
  detail::require_finite(sample);
  std::vector<double> s(sample.begin(), sample.end());
  std::sort(s.begin(), s.end());
  using detail::sorted_quantile;
  return {sorted_quantile(s, 0.05), sorted_quantile(s, 0.25), sorted_quantile(s, 0.5),
          sorted_quantile(s, 0.75), sorted_quantile(s, 0.95)};
}

QuantileStats quantile_stats(const SampleQuantiles& q) {
  const double iqr = q.q75 - q.q25;
  if (!(iqr > 0.0)) throw Error(ErrorCode::DegenerateSample, "interquartile range is zero");
  const double wide = q.q95 - q.q05;
  return {wide / iqr, (q.q95 + q.q05 - 2.0 * q.q50) / wide};
}

QuantileStats quantile_stats(std::span<const double> sample) {
  return quantile_stats(sample_quantiles(sample));
}

EstimationResult estimate_quantile(const SampleQuantiles& q) {
  const QuantileStats st = quantile_stats(q);
  Diagnostics diag;
  double alpha = 2.0;
  double beta = 0.0;
  if (st.v_alpha < detail::nu_alpha_min()) {
    std::ostringstream os;
    os << "quantile ratio " << st.v_alpha << " below the table range; alpha set to 2";
    detail::warn(diag, ErrorCode::AlphaOutOfRange, os.str());
  } else {
    const auto a = detail::psi1(st.v_alpha, st.v_beta);
    const auto b = detail::psi2(st.v_alpha, st.v_beta);
    if (a.clamped || b.clamped) {
      std::ostringstream os;
      os << "quantile statistics (" << st.v_alpha << ", " << st.v_beta
         << ") outside the tabulated range; clamped to the boundary";
      detail::warn(diag, ErrorCode::AlphaOutOfRange, os.str());
    }
    alpha = a.value;
    beta = detail::clamp_beta(b.value, diag);
  }
  const auto c = detail::phi3(alpha, beta);
  const auto z = detail::phi5(alpha, beta);
  const double nu = (q.q75 - q.q25) / c.value;
  const double zeta = q.q50 + nu * z.value;
  const double mu =
      is_alpha_one(alpha) ? zeta : zeta - beta * nu * std::tan(std::numbers::pi * alpha / 2.0);
  return {StableParams(alpha, beta, nu, mu), Method::Quantile, std::move(diag)};
}

EstimationResult estimate_quantile(std::span<const double> sample) {
  return estimate_quantile(sample_quantiles(sample));
}

}  // namespace stable
