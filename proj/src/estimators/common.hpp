#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "stable/error.hpp"
#include "stable/estimators.hpp"

namespace stable::detail {

inline void require_finite(std::span<const double> sample) {
  for (double v : sample) {
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFiniteInput, "sample contains a non-finite value");
  }
}

inline void require_size(std::span<const double> sample, std::size_t n, const char* who) {
  if (sample.size() < n) {
    throw Error(ErrorCode::SampleTooSmall, std::string(who) + " needs at least " + std::to_string(n) +
                                               " observations, got " + std::to_string(sample.size()));
  }
}

inline void warn(Diagnostics& d, ErrorCode code, const std::string& msg) {
  d.warnings.push_back(std::string(code_name(code)) + ": " + msg);
}

/// Type-7 quantile of sorted data.
inline double sorted_quantile(const std::vector<double>& sorted, double p) {
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

/// Median and interquartile range; throws DegenerateSample when the IQR is 0.
struct Spread {
  double median;
  double iqr;
};
Spread median_iqr(std::span<const double> sample);

/// Location of a law after x -> (x - shift) / scale is undone, i.e. the
/// parameters of scale * X + shift for X ~ (alpha, beta, nu, mu).
StableParams rescale(double alpha, double beta, double nu, double mu, double scale, double shift);

/// alpha, beta clamped into the admissible box, with warnings.
double clamp_alpha(double alpha, Diagnostics& d, double lo = 0.1);
double clamp_beta(double beta, Diagnostics& d);

}  // namespace stable::detail
