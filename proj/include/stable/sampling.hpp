#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "stable/core.hpp"

namespace stable {

struct RngSeed {
  std::uint64_t seed = 0;
};

/// Seeded source of the two variates the generator needs. The engine's
/// output sequence is fixed by the standard, and the conversions below are
/// done by hand, so a seed reproduces the same stream on every platform.
class VariateSource {
 public:
  explicit VariateSource(RngSeed seed) : engine_(seed.seed) {}

  /// Uniform on the open interval (0, 1).
  double uniform_open();
  /// Uniform angle on (-pi/2, pi/2).
  double angle();
  /// Unit-mean exponential, -log(1 - u) with u in [0, 1).
  double exponential();

 private:
  double unit_interval();  // [0, 1), 53 bits
  std::mt19937_64 engine_;
};

/// n draws from S(alpha, beta, 1, 0) by the Chambers-Mallows-Stuck formula.
std::vector<double> sample_standard(double alpha, double beta, std::size_t n, RngSeed seed);

/// Alternate generator: Zolotarev's type-B formula for (alpha, beta2, 1, 0),
/// rescaled into S(alpha, beta, 1, 0). Used to cross-check sample_standard.
std::vector<double> sample_standard_type_b(double alpha, double beta, std::size_t n, RngSeed seed);

/// n draws from S(alpha, beta, nu, mu): a * standard + b with (a, b) from standardize().
std::vector<double> sample(const StableParams& params, std::size_t n, RngSeed seed);

struct WeightedSumParams {
  StableParams result;
};

/// Law of sum_k a_k S_k for i.i.d. S_k ~ params (alpha != 1):
///   nu_out^alpha = sum |a_k|^alpha nu^alpha
///   beta_out     = sum a_k^<alpha> beta / sum |a_k|^alpha
///   mu_out       = sum a_k mu
/// with x^<p> = sign(x) |x|^p. Throws UnsupportedAlpha / InvalidArgument.
WeightedSumParams weighted_sum_params(const StableParams& params, std::span<const double> weights);

}  // namespace stable
