#include <cmath>

#include "estimators/common.hpp"

namespace stable {

namespace {

std::vector<double> triples(std::span<const double> s, double w) {
  detail::require_size(s, 3, "triple combination");
  std::vector<double> out(s.size() / 3);
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = s[3 * k + 2] + s[3 * k + 1] - w * s[3 * k];
  }
  return out;
}

}  // namespace

std::vector<double> center(std::span<const double> sample) { return triples(sample, 2.0); }

std::vector<double> deskew(std::span<const double> sample, double alpha) {
  if (!(alpha > 0.0 && alpha <= 2.0)) {
    throw Error(ErrorCode::AlphaOutOfRange, "deskew needs alpha in (0, 2]");
  }
  return triples(sample, std::pow(2.0, 1.0 / alpha));
}

std::vector<double> symmetrize(std::span<const double> sample) {
  detail::require_size(sample, 2, "pair differences");
  std::vector<double> out(sample.size() / 2);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = sample[2 * k + 1] - sample[2 * k];
  return out;
}

}  // namespace stable
