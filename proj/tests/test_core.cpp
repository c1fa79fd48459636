#include <doctest.h>

#include <cmath>
#include <numbers>

#include "stable/core.hpp"
#include "stable/density.hpp"
#include "stable/error.hpp"

using namespace stable;
using std::numbers::pi;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected stable::Error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("validate accepts the named special cases") {
  CHECK_NOTHROW(validate(2.0, 0.0, 1.0 / std::sqrt(2.0), 0.0));
  CHECK_NOTHROW(validate(1.0, 0.0, 1.0, 0.0));
  CHECK_NOTHROW(validate(0.5, 1.0, 1.0, 0.0));
}

TEST_CASE("validate rejects out-of-domain values without clamping") {
  CHECK(code_of([] { validate(0.0, 0.0, 1.0, 0.0); }) == ErrorCode::AlphaOutOfRange);
  CHECK(code_of([] { validate(2.0000001, 0.0, 1.0, 0.0); }) == ErrorCode::AlphaOutOfRange);
  CHECK(code_of([] { validate(1.5, 1.01, 1.0, 0.0); }) == ErrorCode::BetaOutOfRange);
  CHECK(code_of([] { validate(1.5, 0.0, 0.0, 0.0); }) == ErrorCode::NonPositiveScale);
  CHECK(code_of([] { validate(1.5, 0.0, 1.0, NAN); }) == ErrorCode::NonFiniteInput);
}

TEST_CASE("validate is the identity on admissible inputs") {
  for (double a : {0.3, 1.0, 1.7, 2.0})
    for (double b : {-1.0, 0.0, 0.4})
      for (double nu : {0.01, 3.0}) {
        const StableParams p = validate(a, b, nu, -2.5);
        CHECK(p.alpha() == a);
        CHECK(p.beta() == b);
        CHECK(p.nu() == nu);
        CHECK(p.mu() == -2.5);
      }
}

TEST_CASE("alpha within 1e-9 of one takes the alpha = 1 branch") {
  CHECK(is_alpha_one(1.0 + 5e-10));
  CHECK_FALSE(is_alpha_one(1.0 + 2e-9));
}

TEST_CASE("standardize") {
  const StandardShift s1 = standardize(StableParams(1.5, 0.3, 2.0, 5.0));
  CHECK(s1.a == 2.0);
  CHECK(s1.b == 5.0);
  const StandardShift s2 = standardize(StableParams(1.0, 0.5, 1.0, 0.0));
  CHECK(s2.a == 1.0);
  CHECK(s2.b == 0.0);
  const StandardShift s3 = standardize(StableParams(1.0, 1.0, 2.0, 0.0));
  CHECK(s3.a == 2.0);
  CHECK(s3.b == doctest::Approx(2.0 * (2.0 / pi) * std::log(2.0)).epsilon(1e-14));
  CHECK(s3.b == doctest::Approx(0.8825).epsilon(1e-4));
}

TEST_CASE("standardize agrees with the characteristic function on a frequency grid") {
  for (const StableParams& p : {StableParams(1.0, 1.0, 2.0, 0.3), StableParams(1.0, -0.6, 0.3, 1.0),
                                StableParams(1.4, 0.7, 2.5, -1.0)}) {
    const StandardShift s = standardize(p);
    const StableParams unit(p.alpha(), p.beta(), 1.0, 0.0);
    for (double u : {-3.0, -0.7, 0.2, 1.0, 4.0}) {
      const ComplexValue lhs = cf_eval(p, u);
      const ComplexValue rhs = cf_eval(unit, s.a * u) * std::polar(1.0, s.b * u);
      CHECK(std::abs(lhs - rhs) < 1e-12);
    }
  }
}

TEST_CASE("relate reduces to standardize and composes") {
  const StableParams p(1.0, 0.4, 3.0, 1.0);
  const StandardShift r = relate(p, 1.0, 0.0);
  const StandardShift s = standardize(p);
  CHECK(r.a == doctest::Approx(s.a));
  CHECK(r.b == doctest::Approx(s.b));
  const StandardShift q = relate(StableParams(1.3, 0.4, 3.0, 1.0), 1.5, 2.0);
  CHECK(q.a == doctest::Approx(2.0));
  CHECK(q.b == doctest::Approx(1.0 - 4.0));
}

TEST_CASE("to_zolotarev") {
  const ZolotarevParams z0 = to_zolotarev(StableParams(0.5, 0.0, 1.7, 0.0));
  CHECK(z0.beta2 == 0.0);
  CHECK(z0.nu2 == doctest::Approx(1.7).epsilon(1e-15));
  CHECK(z0.k_alpha == doctest::Approx(0.5));

  const ZolotarevParams z1 = to_zolotarev(StableParams(1.0, 0.7, pi / 2.0, 0.0));
  CHECK(z1.beta2 == 0.7);
  CHECK(z1.nu2 == doctest::Approx(1.0).epsilon(1e-15));

  // K = -1/2, arctan(tan(3 pi / 4)) = -pi/4
  const ZolotarevParams z2 = to_zolotarev(StableParams(1.5, 1.0, 1.0, 0.0));
  CHECK(z2.k_alpha == doctest::Approx(-0.5));
  CHECK(z2.beta2 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(z2.nu2 == doctest::Approx(std::cbrt(2.0)).epsilon(1e-12));
}

TEST_CASE("to_zolotarev round trip") {
  for (double a : {0.3, 0.8, 1.2, 1.5, 1.9}) {
    for (double b = -1.0; b <= 1.0; b += 0.25) {
      const StableParams p(a, b, 1.3, 0.0);
      double b2 = 0.0, nu2 = 0.0;
      from_zolotarev(a, to_zolotarev(p), b2, nu2);
      CHECK(b2 == doctest::Approx(b).epsilon(1e-12).scale(1.0));
      CHECK(nu2 == doctest::Approx(1.3).epsilon(1e-12));
    }
  }
}

TEST_CASE("to_zolotarev is continuous in beta") {
  for (double a : {0.5, 1.5}) {
    double prev = to_zolotarev(StableParams(a, -1.0, 1.0, 0.0)).beta2;
    double worst = 0.0;
    for (int i = 1; i <= 2000; ++i) {
      const double cur = to_zolotarev(StableParams(a, -1.0 + i * 1e-3, 1.0, 0.0)).beta2;
      worst = std::max(worst, std::abs(cur - prev));
      prev = cur;
    }
    CHECK(worst < 1e-2);
  }
}

TEST_CASE("zeta_shift") {
  CHECK(zeta_shift(StableParams(1.5, 0.0, 1.0, 3.0)) == 3.0);
  CHECK(zeta_shift(StableParams(1.0, 0.9, 2.0, 3.0)) == 3.0);
  CHECK(zeta_shift(StableParams(1.5, 0.5, 2.0, 0.0)) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("error codes have stable names") {
  CHECK(std::string(code_name(ErrorCode::AlphaOutOfRange)) == "ALPHA_OUT_OF_RANGE");
  CHECK(std::string(code_name(ErrorCode::MleAlphaRestriction)) == "MLE_ALPHA_RESTRICTION");
  CHECK(std::string(code_name(ErrorCode::TooFewPrices)) == "TOO_FEW_PRICES");
}
