#include "stable/sampling.hpp"

#include <cmath>
#include <numbers>

#include "stable/error.hpp"

namespace stable {

namespace {

using std::numbers::pi;

void check_shape(double alpha, double beta) {
  // full validation through the parameter type; scale and location are dummies
  (void)validate(alpha, beta, 1.0, 0.0);
}

}  // namespace

double VariateSource::unit_interval() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double VariateSource::uniform_open() {
  double u = 0.0;
  do {
    u = unit_interval();
  } while (u == 0.0);
  return u;
}

double VariateSource::angle() {
  double v = 0.0;
  do {
    v = pi * (uniform_open() - 0.5);
  } while (!(std::abs(v) < pi / 2.0));
  return v;
}

double VariateSource::exponential() { return -std::log1p(-unit_interval()); }

std::vector<double> sample_standard(double alpha, double beta, std::size_t n, RngSeed seed) {
  check_shape(alpha, beta);
  std::vector<double> out(n);
  VariateSource src(seed);
  if (is_alpha_one(alpha)) {
    for (auto& x : out) {
      const double u = src.angle();
      const double e = src.exponential();
      const double lead = pi / 2.0 + beta * u;
      x = (2.0 / pi) * (lead * std::tan(u) - beta * std::log((pi / 2.0) * e * std::cos(u) / lead));
    }
    return out;
  }
  const double t = beta * std::tan(pi * alpha / 2.0);
  const double b = std::atan(t) / alpha;
  const double a = std::pow(1.0 + t * t, 1.0 / (2.0 * alpha));
  for (auto& x : out) {
    const double u = src.angle();
    const double e = src.exponential();
    x = a * std::sin(alpha * (u + b)) / std::pow(std::cos(u), 1.0 / alpha) *
        std::pow(std::cos(u - alpha * (u + b)) / e, (1.0 - alpha) / alpha);
  }
  return out;
}

std::vector<double> sample_standard_type_b(double alpha, double beta, std::size_t n, RngSeed seed) {
  check_shape(alpha, beta);
  const StableParams unit(alpha, beta, 1.0, 0.0);
  const ZolotarevParams z = to_zolotarev(unit);
  std::vector<double> out(n);
  VariateSource src(seed);
  if (is_alpha_one(alpha)) {
    // (1, beta2, 1, 0) in the type-B form is S(1, beta, pi/2, 0) here.
    // Scaling by 2/pi gives scale 1 and location (2/pi) beta log(pi/2).
    const double b2 = z.beta2;
    const double shift = -(2.0 / pi) * beta * std::log(pi / 2.0);
    for (auto& x : out) {
      const double g = src.angle();
      const double w = src.exponential();
      const double lead = pi / 2.0 + b2 * g;
      const double s = lead * std::tan(g) - b2 * std::log(w * std::cos(g) / lead);
      x = z.nu2 * s + shift;
    }
    return out;
  }
  const double b = (pi / 2.0) * z.beta2 * z.k_alpha / alpha;
  for (auto& x : out) {
    const double g = src.angle();
    const double w = src.exponential();
    const double s = std::sin(alpha * (g + b)) / std::pow(std::cos(g), 1.0 / alpha) *
                     std::pow(std::cos(g - alpha * (g + b)) / w, (1.0 - alpha) / alpha);
    x = z.nu2 * s;
  }
  return out;
}

std::vector<double> sample(const StableParams& params, std::size_t n, RngSeed seed) {
  std::vector<double> out = sample_standard(params.alpha(), params.beta(), n, seed);
  const StandardShift t = standardize(params);
  for (auto& x : out) x = t.a * x + t.b;
  return out;
}

WeightedSumParams weighted_sum_params(const StableParams& params, std::span<const double> weights) {
  if (params.alpha_is_one()) {
    throw Error(ErrorCode::UnsupportedAlpha, "weighted sums are combined for alpha != 1 only");
  }
  if (weights.empty()) throw Error(ErrorCode::InvalidArgument, "weights must be non-empty");
  const double a = params.alpha();
  double mass = 0.0;
  double skew = 0.0;
  double loc = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w)) throw Error(ErrorCode::NonFiniteInput, "weights must be finite");
    const double m = std::pow(std::abs(w), a);
    mass += m;
    skew += sign(w) * m;
    loc += w;
  }
  if (!(mass > 0.0)) throw Error(ErrorCode::InvalidArgument, "weights must not all be zero");
  double beta = skew * params.beta() / mass;
  beta = std::fmax(-1.0, std::fmin(1.0, beta));
  return {StableParams(a, beta, std::pow(mass, 1.0 / a) * params.nu(), loc * params.mu())};
}

}  // namespace stable
