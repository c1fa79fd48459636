#pragma once

#include <cmath>
#include <numbers>

namespace stable {

/// |alpha - 1| below this is treated as alpha == 1 by every module.
inline constexpr double kAlphaOneTolerance = 1e-9;

inline bool is_alpha_one(double alpha) noexcept {
  return std::abs(alpha - 1.0) < kAlphaOneTolerance;
}

/// Four-parameter stable law S(alpha, beta, nu, mu) with characteristic function
///
///   exp(-nu^a |u|^a (1 - i beta sign(u) tan(pi a / 2)) + i mu u)          a != 1
///   exp(-nu |u| (1 + i beta (2/pi) sign(u) log|u|) + i mu u)              a == 1
///
/// Instances can only be obtained through validation, so every StableParams
/// in circulation is admissible.
class StableParams {
 public:
  /// Throws stable::Error (AlphaOutOfRange, BetaOutOfRange, NonPositiveScale,
  /// NonFiniteInput). Never clamps.
  StableParams(double alpha, double beta, double nu, double mu);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double nu() const noexcept { return nu_; }
  double mu() const noexcept { return mu_; }

  bool alpha_is_one() const noexcept { return is_alpha_one(alpha_); }
  bool symmetric() const noexcept { return beta_ == 0.0; }

  friend bool operator==(const StableParams&, const StableParams&) = default;

 private:
  double alpha_;
  double beta_;
  double nu_;
  double mu_;
};

StableParams validate(double alpha, double beta, double nu, double mu);

/// Parameters of the alternative (Zolotarev type B) form used by the
/// generator: beta2, nu2 and K(alpha) = alpha - 1 + sign(1 - alpha).
struct ZolotarevParams {
  double beta2;
  double nu2;
  double k_alpha;
};

/// S(alpha, beta, nu, mu) =d a * S(alpha, beta, 1, 0) + b.
struct StandardShift {
  double a;
  double b;
};

StandardShift standardize(const StableParams& p);

/// General affine relation S(alpha, beta, nu, mu) =d a * S(alpha, beta, nu', mu') + b.
/// Reduces to standardize() for nu' = 1, mu' = 0. The sign of the alpha == 1
/// log-correction follows the standardization case.
StandardShift relate(const StableParams& p, double nu_prime, double mu_prime);

ZolotarevParams to_zolotarev(const StableParams& p);

/// Inverse of to_zolotarev for alpha != 1; returns (beta, nu) in `beta`, `nu`.
void from_zolotarev(double alpha, const ZolotarevParams& z, double& beta, double& nu);

/// Location shift zeta = mu + beta * nu * tan(pi alpha / 2) used by the
/// quantile estimator (zeta = mu for alpha == 1).
double zeta_shift(const StableParams& p);

/// arctan(beta tan(pi alpha / 2)), the skew angle shared by the density and
/// moment formulas.
inline double skew_angle(double alpha, double beta) {
  return std::atan(beta * std::tan(std::numbers::pi * alpha / 2.0));
}

inline double sign(double x) noexcept { return (x > 0.0) - (x < 0.0); }

}  // namespace stable
