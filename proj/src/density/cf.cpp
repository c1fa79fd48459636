#include <cmath>
#include <numbers>

#include "stable/density.hpp"

namespace stable {

ComplexValue cf_eval(const StableParams& p, double u) {
  using namespace std::complex_literals;
  if (u == 0.0) return {1.0, 0.0};
  const double au = std::abs(u);
  const double su = sign(u);
  if (p.alpha_is_one()) {
    const double re = -p.nu() * au;
    const double im = -p.nu() * au * p.beta() * (2.0 / std::numbers::pi) * su * std::log(au) + p.mu() * u;
    return std::polar(std::exp(re), im);
  }
  const double scaled = std::pow(p.nu() * au, p.alpha());
  const double im = scaled * p.beta() * su * std::tan(std::numbers::pi * p.alpha() / 2.0) + p.mu() * u;
  return std::polar(std::exp(-scaled), im);
}

}  // namespace stable
