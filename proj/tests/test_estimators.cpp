#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "estimators/nelder_mead.hpp"
#include "stable/density.hpp"
#include "stable/error.hpp"
#include "stable/estimators.hpp"
#include "stable/sampling.hpp"

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

SampleQuantiles exact_quantiles(const StableParams& p) {
  return {quantile(p, 0.05), quantile(p, 0.25), quantile(p, 0.5), quantile(p, 0.75), quantile(p, 0.95)};
}

std::vector<double> affine(const std::vector<double>& x, double a, double b) {
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = a * x[i] + b;
  return y;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

template <class Dist>
std::vector<double> draws(Dist d, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  std::vector<double> x(n);
  for (double& v : x) v = d(g);
  return x;
}

}  // namespace

// ---------------------------------------------------------------------------
// quantile method

TEST_CASE("quantile statistics on exact quantiles") {
  const double z95 = 1.6448536269514722, z75 = 0.6744897501960817;
  const QuantileStats n = quantile_stats(SampleQuantiles{-z95, -z75, 0.0, z75, z95});
  CHECK(n.v_alpha == doctest::Approx(2.4386636364352388).epsilon(1e-14));
  CHECK(n.v_beta == doctest::Approx(0.0).scale(1.0));
  const double c95 = std::tan(0.45 * pi);
  const QuantileStats c = quantile_stats(SampleQuantiles{-c95, -1.0, 0.0, 1.0, c95});
  CHECK(c.v_alpha == doctest::Approx(6.3137515146750430).epsilon(1e-14));
}

TEST_CASE("quantile statistics of a symmetric sample") {
  std::vector<double> x = sample_standard(1.2, 0.7, 501, RngSeed{1});
  const double m = median(x);
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) x.push_back(2.0 * m - x[i]);
  CHECK(quantile_stats(x).v_beta == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(quantile_stats(x).v_alpha >= 1.0);
}

TEST_CASE("quantile method errors") {
  const std::vector<double> flat(100, 3.0);
  CHECK(code_of([&] { estimate_quantile(flat); }) == ErrorCode::DegenerateSample);
  const std::vector<double> few(19, 1.0);
  CHECK(code_of([&] { estimate_quantile(few); }) == ErrorCode::SampleTooSmall);
  std::vector<double> bad = sample_standard(1.5, 0.0, 100, RngSeed{1});
  bad[7] = NAN;
  CHECK(code_of([&] { estimate_quantile(bad); }) == ErrorCode::NonFiniteInput);
}

TEST_CASE("quantile method on exact quantiles") {
  const EstimationResult g = estimate_quantile(exact_quantiles(StableParams(2.0, 0.0, 1.0 / std::sqrt(2.0), 0.0)));
  CHECK(g.params.alpha() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(g.params.nu() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(2e-3));
  CHECK(std::abs(g.params.mu()) < 1e-12);

  const EstimationResult c = estimate_quantile(exact_quantiles(StableParams(1.0, 0.0, 1.0, 0.0)));
  CHECK(std::abs(c.params.alpha() - 1.0) <= 0.02);  // table interpolation between 6.0 and 8.0
  CHECK(std::abs(c.params.beta()) < 1e-3);
  CHECK(c.params.nu() == doctest::Approx(1.0).epsilon(2e-3));
  CHECK(std::abs(c.params.mu()) < 1e-3);

  for (const StableParams& p : {StableParams(1.5, 0.5, 1.0, 0.0), StableParams(0.8, -0.3, 2.0, 1.0),
                                StableParams(1.7, 0.2, 0.5, -3.0)}) {
    const EstimationResult r = estimate_quantile(exact_quantiles(p));
    CAPTURE(p.alpha());
    CHECK(std::abs(r.params.alpha() - p.alpha()) <= 0.02);
    CHECK(std::abs(r.params.beta() - p.beta()) <= 0.05);
    CHECK(std::abs(r.params.nu() / p.nu() - 1.0) <= 0.02);
    CHECK(std::abs(r.params.mu() - p.mu()) <= 0.05 * p.nu());
  }
}

TEST_CASE("quantile method on simulated data") {
  const EstimationResult r = estimate_quantile(sample_standard(1.5, 0.0, 10000, RngSeed{11}));
  CHECK(r.params.alpha() >= 1.4);
  CHECK(r.params.alpha() <= 1.6);
  CHECK(std::abs(r.params.beta()) <= 0.15);
  const EstimationResult g = estimate_quantile(sample(StableParams(2.0, 0.0, 1.0 / std::sqrt(2.0), 3.0), 10000, RngSeed{12}));
  CHECK(g.params.mu() >= 2.95);
  CHECK(g.params.mu() <= 3.05);
}

// ---------------------------------------------------------------------------
// characteristic function methods

TEST_CASE("ecf_empirical") {
  const std::vector<double> x = sample_standard(1.5, 0.0, 100000, RngSeed{3});
  const ComplexValue one = ecf_empirical(x, 0.0);
  CHECK(one.real() == 1.0);
  CHECK(one.imag() == 0.0);
  const std::vector<double> c{0.7};
  CHECK(std::abs(ecf_empirical(c, 2.0) - std::polar(1.0, 1.4)) < 1e-15);
  CHECK(std::abs(ecf_empirical(x, 1.0) - std::exp(-1.0)) < 0.01);
  for (double u : {0.3, 2.0, 10.0}) CHECK(std::abs(ecf_empirical(x, u)) <= 1.0 + 1e-15);
}

TEST_CASE("ECF config validation") {
  EcfConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.u2 = cfg.u1;
  CHECK(code_of([&] { cfg.validate(); }) == ErrorCode::InvalidArgument);
  cfg = EcfConfig{};
  cfg.u3 = -0.1;
  CHECK(code_of([&] { cfg.validate(); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("ECF recovers parameters from the exact characteristic function") {
  for (const StableParams& p : {StableParams(1.5, 0.0, 1.0, 0.0), StableParams(1.5, 0.3, 1.0, 0.2),
                                StableParams(0.8, -0.6, 1.3, -0.4), StableParams(1.9, 0.9, 0.7, 1.0),
                                StableParams(2.0, 0.0, 1.0, 0.5)}) {
    const EstimationResult r = estimate_ecf([&](double u) { return cf_eval(p, u); });
    CAPTURE(p.alpha());
    CAPTURE(p.beta());
    CHECK(r.params.alpha() == doctest::Approx(p.alpha()).epsilon(1e-8));
    CHECK(r.params.nu() == doctest::Approx(p.nu()).epsilon(1e-8));
    CHECK(r.params.beta() == doctest::Approx(p.beta()).epsilon(1e-8).scale(1.0));
    CHECK(r.params.mu() == doctest::Approx(p.mu()).epsilon(1e-8).scale(1.0));
  }
}

TEST_CASE("ECF regression on exact moduli") {
  const StableParams p(1.3, 0.0, 1.0, 0.0);
  const EcfLine line = ecf_regression_line([&](double u) { return cf_eval(p, u); }, 10);
  CHECK(line.slope == doctest::Approx(1.3).epsilon(1e-10));
  CHECK(line.intercept == doctest::Approx(std::log(2.0)).epsilon(1e-10));
  CHECK(code_of([&] { ecf_regression_line([&](double u) { return cf_eval(p, u); }, 1); }) ==
        ErrorCode::InsufficientRegressionPoints);

  const StableParams q(1.6, -0.4, 1.0, 0.3);
  const EstimationResult r = estimate_ecf_regression([&](double u) { return cf_eval(q, u); });
  CHECK(r.params.alpha() == doctest::Approx(1.6).epsilon(1e-8));
  CHECK(r.params.nu() == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(r.params.beta() == doctest::Approx(-0.4).epsilon(1e-6));
  CHECK(r.params.mu() == doctest::Approx(0.3).epsilon(1e-6));
}

TEST_CASE("ECF on simulated data") {
  const EstimationResult r = estimate_ecf(sample(StableParams(1.7, 0.4, 1.0, 0.0), 10000, RngSeed{21}));
  CHECK(std::abs(r.params.alpha() - 1.7) <= 0.05);
  CHECK(std::abs(r.params.beta() - 0.4) <= 0.15);
  const EstimationResult g = estimate_ecf_regression(sample_standard(1.4, 0.0, 10000, RngSeed{22}));
  CHECK(g.params.alpha() >= 1.33);
  CHECK(g.params.alpha() <= 1.47);
}

TEST_CASE("ECF on a symmetrically augmented sample") {
  std::vector<double> x = sample_standard(1.5, 0.7, 5000, RngSeed{23});
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) x.push_back(-x[i]);
  const EstimationResult r = estimate_ecf(x);
  CHECK(std::abs(r.params.beta()) < 1e-10);
  CHECK(std::abs(r.params.mu()) < 0.05);
}

TEST_CASE("ECF errors") {
  const std::vector<double> few(99, 1.0);
  CHECK(code_of([&] { estimate_ecf(few); }) == ErrorCode::SampleTooSmall);
  // |phi| == 1 everywhere
  CHECK(code_of([] { estimate_ecf([](double u) { return std::polar(1.0, 0.3 * u); }); }) == ErrorCode::EcfDegenerate);
}

TEST_CASE("ECF near alpha = 1 falls back with a warning") {
  const StableParams p(1.0, 0.5, 1.0, 0.2);
  const EstimationResult r = estimate_ecf([&](double u) { return cf_eval(p, u); });
  CHECK(r.params.alpha() == doctest::Approx(1.0).epsilon(1e-8));
  const auto& w = r.diagnostics.warnings;
  CHECK(std::any_of(w.begin(), w.end(), [](const std::string& s) { return s.find("ALPHA_NEAR_ONE") != std::string::npos; }));
  CHECK(r.params.beta() == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(r.params.mu() == doctest::Approx(0.2).epsilon(1e-6));
}

// ---------------------------------------------------------------------------
// centro-symmetrization and log-moments

TEST_CASE("pair and triple combinations") {
  const std::vector<double> ab{2.0, 5.0};
  CHECK(symmetrize(ab) == std::vector<double>{3.0});
  const std::vector<double> seven{1, 2, 3, 4, 5, 6, 7};
  CHECK(center(seven) == std::vector<double>{3.0 + 2.0 - 2.0, 6.0 + 5.0 - 8.0});
  const std::vector<double> d = deskew(seven, 2.0);
  REQUIRE(d.size() == 2);
  CHECK(d[0] == doctest::Approx(5.0 - std::sqrt(2.0)));
  CHECK(symmetrize(seven).size() == 3);
  const std::vector<double> one{1.0};
  CHECK(code_of([&] { symmetrize(one); }) == ErrorCode::SampleTooSmall);
  CHECK(code_of([&] { center(ab); }) == ErrorCode::SampleTooSmall);
}

TEST_CASE("symmetrized and centred sequences") {
  const std::vector<double> skewed = sample(StableParams(1.5, 0.8, 1.0, 0.0), 100000, RngSeed{31});
  CHECK(std::abs(estimate_ecf(symmetrize(skewed)).params.beta()) <= 0.1);
  const std::vector<double> shifted = sample(StableParams(1.5, 0.0, 1.0, 5.0), 100000, RngSeed{32});
  CHECK(std::abs(median(center(shifted))) <= 0.1);
}

TEST_CASE("alpha from the second log-moment") {
  CHECK(alpha_from_log_m2(kPhi1 * 0.75) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(alpha_from_log_m2(kPhi1 * (0.5 + 1.0 / (1.3 * 1.3))) == doctest::Approx(1.3).epsilon(1e-12));
  CHECK(alpha_from_log_m2(0.0) == 2.0);
  CHECK(std::isfinite(alpha_from_log_m2(kPhi1 * 0.5)));
}

TEST_CASE("log-moment estimator on simulated data") {
  const EstimationResult s = estimate_logmoments(sample_standard(1.3, 0.0, 100000, RngSeed{33}));
  CHECK(s.params.alpha() >= 1.2);
  CHECK(s.params.alpha() <= 1.4);
  const EstimationResult k = estimate_logmoments(sample_standard(1.5, 0.6, 100000, RngSeed{34}));
  CHECK(k.params.beta() > 0.0);
  const EstimationResult m = estimate_logmoments(sample_standard(1.5, -0.6, 100000, RngSeed{35}));
  CHECK(m.params.beta() < 0.0);
}

TEST_CASE("log-moment estimator errors") {
  const std::vector<double> few(299, 1.0);
  CHECK(code_of([&] { estimate_logmoments(few); }) == ErrorCode::SampleTooSmall);
  std::vector<double> zeros = sample_standard(1.5, 0.0, 3000, RngSeed{36});
  for (std::size_t k = 0; k < 30; ++k) zeros[2 * k + 1] = zeros[2 * k];  // equal pairs difference to zero
  CHECK(code_of([&] { estimate_logmoments(zeros); }) == ErrorCode::LogOfZero);
  std::vector<double> one = sample_standard(1.5, 0.0, 3000, RngSeed{36});
  one[1] = one[0];
  const EstimationResult r = estimate_logmoments(one);
  CHECK_FALSE(r.diagnostics.warnings.empty());
}

// ---------------------------------------------------------------------------
// maximum likelihood

TEST_CASE("Nelder-Mead finds the Rosenbrock minimum") {
  const auto rosen = [](const std::vector<double>& x) {
    return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2) + 1.0;
  };
  detail::SimplexOptions opt;
  opt.max_iterations = 5000;
  opt.rel_tol = 1e-14;
  const detail::SimplexResult r = detail::nelder_mead(rosen, {-1.2, 1.0}, opt);
  CHECK(r.converged);
  CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(r.x[1] == doctest::Approx(1.0).epsilon(1e-3));
  const detail::SimplexResult z = detail::nelder_mead(rosen, {0.0, 0.0}, {0, 1e-8, 0.1});
  CHECK_FALSE(z.converged);
  CHECK(z.iterations == 0);
}

TEST_CASE("MLE on simulated data") {
  const EstimationResult g = estimate_mle(sample(StableParams(2.0, 0.0, 1.0 / std::sqrt(2.0), 0.0), 5000, RngSeed{41}));
  CHECK(g.params.alpha() >= 1.9);
  CHECK(std::abs(g.params.mu()) <= 0.05);
  const EstimationResult s = estimate_mle(sample_standard(1.4, 0.0, 5000, RngSeed{42}));
  CHECK(std::abs(s.params.alpha() - 1.4) <= 0.07);
  CHECK(s.diagnostics.converged);
  CHECK(s.diagnostics.objective.has_value());
}

TEST_CASE("MLE with no iterations returns the initial point") {
  const StableParams truth(1.4, 0.2, 1.0, 0.0);
  const std::vector<double> x = sample(truth, 1000, RngSeed{43});
  MleConfig cfg;
  cfg.max_iterations = 0;
  const EstimationResult r = estimate_mle(x, truth, cfg);
  CHECK(r.params == truth);
  CHECK_FALSE(r.diagnostics.converged);
}

TEST_CASE("MLE errors") {
  const std::vector<double> few(99, 1.0);
  CHECK(code_of([&] { estimate_mle(few); }) == ErrorCode::SampleTooSmall);
  std::vector<double> flat(500, 1.0);
  CHECK(code_of([&] { estimate_mle(flat); }) == ErrorCode::InitializationFailed);
}

// ---------------------------------------------------------------------------
// t location-scale

TEST_CASE("t location-scale fit") {
  const TLocationScaleParams t4 = fit_tls(draws(std::student_t_distribution<double>(4.0), 10000, 51));
  CHECK(t4.alpha_star() >= 3.4);
  CHECK(t4.alpha_star() <= 4.6);
  const TLocationScaleParams g = fit_tls(draws(std::normal_distribution<double>(0.0, 1.0), 10000, 52));
  CHECK(g.alpha_star() >= 20.0);
  const TLocationScaleParams c = fit_tls(draws(std::cauchy_distribution<double>(0.0, 1.0), 10000, 53));
  CHECK(c.alpha_star() >= 0.8);
  CHECK(c.alpha_star() <= 1.2);
  CHECK(c.nu() == doctest::Approx(1.0).epsilon(0.05));
}

// ---------------------------------------------------------------------------
// equivariance

TEST_CASE("affine equivariance") {
  const std::vector<double> x = sample(StableParams(1.6, 0.3, 1.0, 0.0), 3000, RngSeed{61});
  const double a = 3.0, b = -2.0;
  const std::vector<double> y = affine(x, a, b);
  for (Method m : {Method::Quantile, Method::LogMoments, Method::Ecf, Method::EcfRegression, Method::Mle}) {
    const StableParams px = estimate(m, x).params;
    const StableParams py = estimate(m, y).params;
    CAPTURE(method_name(m));
    CHECK(py.alpha() == doctest::Approx(px.alpha()).epsilon(1e-6));
    CHECK(py.beta() == doctest::Approx(px.beta()).epsilon(1e-6).scale(1.0));
    CHECK(py.nu() == doctest::Approx(a * px.nu()).epsilon(1e-6));
    CHECK(py.mu() == doctest::Approx(a * px.mu() + b).epsilon(1e-6).scale(1.0));
  }
}

TEST_CASE("negation flips skewness and location") {
  const std::vector<double> x = sample(StableParams(1.6, 0.5, 1.0, 0.4), 3000, RngSeed{62});
  const std::vector<double> y = affine(x, -1.0, 0.0);
  for (Method m : {Method::Quantile, Method::Ecf, Method::EcfRegression}) {
    const StableParams px = estimate(m, x).params;
    const StableParams py = estimate(m, y).params;
    CAPTURE(method_name(m));
    CHECK(py.alpha() == doctest::Approx(px.alpha()).epsilon(1e-6));
    CHECK(py.beta() == doctest::Approx(-px.beta()).epsilon(1e-6).scale(1.0));
    CHECK(py.nu() == doctest::Approx(px.nu()).epsilon(1e-6));
    CHECK(py.mu() == doctest::Approx(-px.mu()).epsilon(1e-6).scale(1.0));
  }
}

TEST_CASE("method names") {
  for (Method m : {Method::Quantile, Method::LogMoments, Method::Ecf, Method::EcfRegression, Method::Mle})
    CHECK(method_from_name(method_name(m)) == m);
  CHECK(code_of([] { method_from_name("bogus"); }) == ErrorCode::InvalidArgument);
}
