#include <cmath>
#include <numbers>

#include "estimators/common.hpp"
#include "estimators/nelder_mead.hpp"

namespace stable {

TLocationScaleParams fit_tls(std::span<const double> sample) {
  detail::require_size(sample, 100, "t location-scale fit");
  detail::require_finite(sample);
  const detail::Spread sp = detail::median_iqr(sample);
  std::vector<double> z(sample.size());
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = (sample[i] - sp.median) / sp.iqr;

  // (mu, log nu, log alpha*) on the median/IQR standardized data
  auto nll = [&](const std::vector<double>& x) {
    const double nu = std::exp(x[1]);
    const double a = std::exp(x[2]);
    if (!std::isfinite(nu) || !std::isfinite(a) || !(nu > 0.0) || !(a > 0.0)) return HUGE_VAL;
    const double c = std::lgamma((a + 1.0) / 2.0) - std::lgamma(a / 2.0) - 0.5 * std::log(a * std::numbers::pi) - x[1];
    double s = 0.0;
    for (double v : z) {
      const double t = (v - x[0]) / nu;
      s += c - (a + 1.0) / 2.0 * std::log1p(t * t / a);
    }
    return -s;
  };
  detail::SimplexOptions opt;
  opt.initial_step = 0.2;
  const detail::SimplexResult r = detail::nelder_mead(nll, {0.0, std::log(1.0 / 1.35), std::log(5.0)}, opt);
  return TLocationScaleParams(sp.median + sp.iqr * r.x[0], sp.iqr * std::exp(r.x[1]), std::exp(r.x[2]));
}

}  // namespace stable
