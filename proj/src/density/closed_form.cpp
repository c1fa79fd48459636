#include <cmath>
#include <numbers>

#include "stable/density.hpp"
#include "stable/error.hpp"

namespace stable {

namespace {

constexpr double kMatchTol = 1e-12;

enum class Closed { None, Gaussian, Cauchy, LevyRight, LevyLeft };

Closed classify(const StableParams& p) {
  if (std::abs(p.alpha() - 2.0) <= kMatchTol) return Closed::Gaussian;
  if (std::abs(p.alpha() - 1.0) <= kMatchTol && std::abs(p.beta()) <= kMatchTol) return Closed::Cauchy;
  if (std::abs(p.alpha() - 0.5) <= kMatchTol) {
    if (std::abs(p.beta() - 1.0) <= kMatchTol) return Closed::LevyRight;
    if (std::abs(p.beta() + 1.0) <= kMatchTol) return Closed::LevyLeft;
  }
  return Closed::None;
}

double levy_pdf(double nu, double d) {
  if (d <= 0.0) return 0.0;
  return std::sqrt(nu / (2.0 * std::numbers::pi)) * std::pow(d, -1.5) * std::exp(-nu / (2.0 * d));
}

double levy_cdf(double nu, double d) {
  if (d <= 0.0) return 0.0;
  return std::erfc(std::sqrt(nu / (2.0 * d)));
}

}  // namespace

bool has_closed_form(const StableParams& p) { return classify(p) != Closed::None; }

double pdf_closed(const StableParams& p, double s) {
  const double d = s - p.mu();
  const double nu = p.nu();
  switch (classify(p)) {
    case Closed::Gaussian:
      // sigma = nu * sqrt(2)
      return std::exp(-d * d / (4.0 * nu * nu)) / (2.0 * nu * std::sqrt(std::numbers::pi));
    case Closed::Cauchy:
      return nu / (std::numbers::pi * (nu * nu + d * d));
    case Closed::LevyRight:
      return levy_pdf(nu, d);
    case Closed::LevyLeft:
      return levy_pdf(nu, -d);
    case Closed::None:
      break;
  }
  throw Error(ErrorCode::NotClosedForm, "no closed-form density for these parameters");
}

double cdf_closed(const StableParams& p, double s) {
  const double d = s - p.mu();
  const double nu = p.nu();
  switch (classify(p)) {
    case Closed::Gaussian:
      return 0.5 * std::erfc(-d / (2.0 * nu));
    case Closed::Cauchy:
      return 0.5 + std::atan(d / nu) / std::numbers::pi;
    case Closed::LevyRight:
      return levy_cdf(nu, d);
    case Closed::LevyLeft:
      return 1.0 - levy_cdf(nu, -d);
    case Closed::None:
      break;
  }
  throw Error(ErrorCode::NotClosedForm, "no closed-form distribution function for these parameters");
}

}  // namespace stable
