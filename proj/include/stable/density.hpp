#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "stable/core.hpp"

namespace stable {

using ComplexValue = std::complex<double>;

/// Characteristic function of S(alpha, beta, nu, mu) at frequency u.
ComplexValue cf_eval(const StableParams& p, double u);

// ---------------------------------------------------------------------------
// Closed forms: Gaussian (alpha = 2), Cauchy (alpha = 1, beta = 0) and Levy
// (alpha = 1/2, beta = +-1). Matching uses a 1e-12 tolerance on alpha and beta.

bool has_closed_form(const StableParams& p);
/// Throws NotClosedForm for any other parameter combination.
double pdf_closed(const StableParams& p, double s);
double cdf_closed(const StableParams& p, double s);

// ---------------------------------------------------------------------------
// FFT route.

struct Window {
  double lo;
  double hi;
};

/// Density tabulated on a uniform grid. Values are immutable after
/// construction; evaluation between nodes uses four-point cubic interpolation
/// and returns 0 outside the grid.
class DensityGrid {
 public:
  DensityGrid(std::vector<double> abscissae, std::vector<double> densities,
              StableParams params, double max_clipped = 0.0);

  std::span<const double> abscissae() const noexcept { return x_; }
  std::span<const double> densities() const noexcept { return f_; }
  const StableParams& params() const noexcept { return params_; }
  double spacing() const noexcept { return dx_; }
  std::size_t size() const noexcept { return x_.size(); }
  double lo() const noexcept { return x_.front(); }
  double hi() const noexcept { return x_.back(); }

  /// Largest magnitude of a negative (ringing) value that was clipped to 0.
  double max_clipped() const noexcept { return max_clipped_; }

  bool contains(double s) const noexcept { return s >= x_.front() && s <= x_.back(); }
  double operator()(double s) const;
  double trapezoid_mass() const;

 private:
  std::vector<double> x_;
  std::vector<double> f_;
  StableParams params_;
  double dx_;
  double max_clipped_;
};

/// Inverse FFT of cf_eval on the window [lo, hi) with n points (n a power of
/// two, >= 256, window containing mu). Throws WindowTooNarrow when a boundary
/// density exceeds 1e-4 times the peak.
DensityGrid pdf_fft(const StableParams& p, Window window, std::size_t n_points);

/// Default tabulation: window centred on mu, widened (and refined) by doubling
/// until the boundary check passes, at most four times.
DensityGrid pdf_fft(const StableParams& p);

/// Same as pdf_fft(p, window, n) without the boundary check. Used where the
/// caller handles far tails itself (the likelihood).
DensityGrid pdf_fft_unchecked(const StableParams& p, Window window, std::size_t n_points);

/// Smallest power-of-two point count and half-width the default FFT
/// tabulation starts from for the standard law S(alpha, beta, 1, 0).
struct FftLayout {
  double half_width;
  std::size_t n;
};
FftLayout default_fft_layout(double alpha, double beta);

// ---------------------------------------------------------------------------
// Integral routes (alpha != 1, plus the Cauchy law).

/// Semi-infinite cosine integral (1/(pi nu)) int_0^inf exp(-t^a) cos(t x - beta t^a tan(pi a/2)) dt
/// with x = (s - mu)/nu. Throws UnsupportedAlpha for alpha == 1 with beta != 0
/// and QuadratureNoConvergence when the error estimate stays above 1e-8.
double pdf_integral(const StableParams& p, double s);

/// Zolotarev's non-oscillatory integral representation (the Cauchy law is
/// returned in closed form; other alpha == 1 laws throw). Points within
/// kModeSwitchEps (relative to nu) of mu use the closed mode value.
double pdf_zolotarev(const StableParams& p, double s);

inline constexpr double kModeSwitchEps = 1e-6;

/// The s != mu integral branch only; throws NearModeInstability inside the
/// mode band instead of redirecting.
double zolotarev_integral_branch(const StableParams& p, double s);

/// Closed value of the density at s = mu.
double zolotarev_mode_value(const StableParams& p);

/// Best available route: closed form, Zolotarev for alpha != 1, FFT otherwise.
double pdf(const StableParams& p, double s);

// ---------------------------------------------------------------------------
// Distribution function.

/// Distribution function H(s). Closed forms where available; the Zolotarev
/// distribution integral otherwise (including the skewed alpha == 1 case).
double cdf(const StableParams& p, double s);

/// Inverse of cdf by safeguarded Newton/bisection. p in (0, 1).
double quantile(const StableParams& params, double prob);

/// C_alpha = Gamma(alpha) sin(pi alpha / 2) / pi, so that
/// P(X > x) ~ C_alpha (1 + beta) (x / nu)^(-alpha) for alpha < 2.
double tail_constant(double alpha);

// ---------------------------------------------------------------------------
// Moments (about mu; mu itself is ignored).

/// E[S^<p>] for p in (-2, -1) U (-1, alpha), p != 0. Throws MomentUndefined.
double flom_signed(const StableParams& params, double p);
/// E|S|^p for p in (-1, alpha), p != 0. Throws MomentUndefined.
double flom_abs(const StableParams& params, double p);

/// Constants of the log-moment formulas (polygamma values at 1).
inline constexpr double kPhi0 = -0.57721566;
inline constexpr double kPhi1 = 1.6449340668482264;  // pi^2 / 6
inline constexpr double kPhi3 = 1.2020569;

struct LogMoments {
  double m1;  // E log|S|
  double m2;  // central, order 2
  double m3;  // central, order 3
};

LogMoments log_moments_theoretical(const StableParams& p);

// ---------------------------------------------------------------------------
// t location-scale comparison family.

class TLocationScaleParams {
 public:
  /// Throws NonPositiveScale / InvalidArgument.
  TLocationScaleParams(double mu, double nu, double alpha_star);

  double mu() const noexcept { return mu_; }
  double nu() const noexcept { return nu_; }
  double alpha_star() const noexcept { return alpha_star_; }

 private:
  double mu_;
  double nu_;
  double alpha_star_;
};

double tls_pdf(const TLocationScaleParams& p, double x);
double tls_log_pdf(const TLocationScaleParams& p, double x);
/// Throws VarianceUndefined when alpha_star <= 2.
double tls_variance(const TLocationScaleParams& p);

}  // namespace stable
