#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stable/core.hpp"
#include "stable/density.hpp"

namespace stable {

enum class Method { Quantile, LogMoments, Ecf, EcfRegression, Mle };

/// Short lower-case name used in reports ("quantile", "logmoments", "ecf",
/// "ecf-reg", "mle").
std::string_view method_name(Method m);
/// Inverse of method_name; throws InvalidArgument.
Method method_from_name(std::string_view name);

struct Diagnostics {
  bool converged = true;
  int iterations = 0;
  std::optional<double> objective;
  std::vector<std::string> warnings;
};

struct EstimationResult {
  StableParams params;
  Method method;
  Diagnostics diagnostics;
};

// ---------------------------------------------------------------------------
// Quantile method.

struct QuantileStats {
  double v_alpha;
  double v_beta;
};

/// The five order-statistic summaries the quantile method uses.
struct SampleQuantiles {
  double q05;
  double q25;
  double q50;
  double q75;
  double q95;
};

/// Type-7 quantiles (linear interpolation between order statistics).
/// Throws SampleTooSmall (< 20 points), NonFiniteInput.
SampleQuantiles sample_quantiles(std::span<const double> sample);

/// Throws DegenerateSample when q75 == q25.
QuantileStats quantile_stats(const SampleQuantiles& q);
QuantileStats quantile_stats(std::span<const double> sample);

EstimationResult estimate_quantile(const SampleQuantiles& q);
EstimationResult estimate_quantile(std::span<const double> sample);

// ---------------------------------------------------------------------------
// Empirical characteristic function.

ComplexValue ecf_empirical(std::span<const double> sample, double u);

struct EcfConfig {
  double u1 = 0.2;
  double u2 = 0.8;
  double u3 = 0.1;
  double u4 = 0.4;
  int m = 10;  // regression points u_k = pi k / 25
  int q = 10;  // regression points u_l = pi l / 50

  /// Throws InvalidArgument.
  void validate() const;
};

/// Characteristic function source: the empirical CF of a (pre-scaled)
/// sample, or an exact CF for noiseless checks.
using CfSource = std::function<ComplexValue(double)>;

/// Two-point estimator on an arbitrary CF source, no pre-scaling.
EstimationResult estimate_ecf(const CfSource& cf, const EcfConfig& cfg = {});
/// Sample version: median-centred, IQR-scaled, mapped back afterwards.
EstimationResult estimate_ecf(std::span<const double> sample, const EcfConfig& cfg = {});

EstimationResult estimate_ecf_regression(const CfSource& cf, const EcfConfig& cfg = {});
EstimationResult estimate_ecf_regression(std::span<const double> sample, const EcfConfig& cfg = {});

/// Intercept and slope of log(-log|phi(u_k)|^2) on log u_k, u_k = pi k / 25.
struct EcfLine {
  double intercept;
  double slope;
};
EcfLine ecf_regression_line(const CfSource& cf, int m);

// ---------------------------------------------------------------------------
// Centro-symmetrization. Leftover elements are dropped.

/// S_{3k} + S_{3k-1} - 2 S_{3k-2}
std::vector<double> center(std::span<const double> sample);
/// S_{3k} + S_{3k-1} - 2^{1/alpha} S_{3k-2}
std::vector<double> deskew(std::span<const double> sample, double alpha);
/// S_{2k} - S_{2k-1}
std::vector<double> symmetrize(std::span<const double> sample);

// ---------------------------------------------------------------------------
// Logarithmic moments.

/// How the scale of the original data is recovered from the dispersion
/// estimate of the centred sequence.
enum class ScaleInversion {
  Consistent,  // nu = (gamma_c / (2 + 2^alpha))^(1/alpha)
  AsPrinted,   // nu = gamma_c / (2 - 2^(1/alpha))
};

struct LogMomentsConfig {
  ScaleInversion scale = ScaleInversion::Consistent;
};

EstimationResult estimate_logmoments(std::span<const double> sample, const LogMomentsConfig& cfg = {});

/// Inverse of the symmetric second log-moment: (m2 / phi1 - 1/2)^(-1/2),
/// argument floored at 1e-6, result capped at 2.
double alpha_from_log_m2(double m2);

// ---------------------------------------------------------------------------
// Maximum likelihood.

inline constexpr double kMleAlphaFloor = 0.4;

struct MleConfig {
  int max_iterations = 500;
};

/// Without init, the quantile estimate is used. Throws InitializationFailed,
/// MleAlphaRestriction, SampleTooSmall.
EstimationResult estimate_mle(std::span<const double> sample, std::optional<StableParams> init = {},
                              const MleConfig& cfg = {});

/// ML fit of the t location-scale family, started at (median, IQR/1.35, 5).
TLocationScaleParams fit_tls(std::span<const double> sample);

/// Runs one method with default settings.
EstimationResult estimate(Method m, std::span<const double> sample);

}  // namespace stable
