#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "stable/error.hpp"
#include "stable/harness.hpp"

using namespace stable;

namespace {

BenchRecord make_record(Method m, double truth_alpha, std::optional<double> est_alpha,
                        TrialStatus status = TrialStatus::Ok) {
  BenchRecord r{m, 0, truth_alpha, 100, 0, 0, StableParams(truth_alpha, 0.0, 1.0, 0.0), std::nullopt, status, {}, 0.0};
  if (est_alpha) r.estimate = StableParams(*est_alpha, 0.0, 1.0, 0.0);
  return r;
}

const SummaryRow& row_for(const std::vector<SummaryRow>& rows, Method m, Param p) {
  for (const SummaryRow& r : rows)
    if (r.method == m && r.param == p) return r;
  FAIL("missing summary row");
  return rows.front();
}

std::string records_text(const std::vector<BenchRecord>& r) {
  std::ostringstream os;
  write_records_csv(os, r);
  return os.str();
}

}  // namespace

TEST_CASE("sweep produces one record per grid point, replication and method") {
  BenchScenario s;
  s.true_params = StableParams(1.5, 0.4, 1.0, 0.0);
  s.sweep = Sweep::AlphaSweepAtFixedBeta;
  s.grid = {1.4, 1.7};
  s.n_per_trial = 500;
  s.replications = 3;
  s.methods = {Method::Ecf, Method::Quantile};
  s.base_seed = RngSeed{1000};
  const std::vector<BenchRecord> r = run_sweep(s);
  REQUIRE(r.size() == 2 * 3 * 2);
  for (std::size_t i = 0; i < r.size(); ++i) {
    const std::size_t g = i / 6, rep = (i / 2) % 3;
    CHECK(r[i].grid_index == g);
    CHECK(r[i].replication == static_cast<int>(rep));
    CHECK(r[i].method == s.methods[i % 2]);
    CHECK(r[i].seed == 1000 + g * 3 + rep);
    CHECK(r[i].truth.alpha() == s.grid[g]);
    CHECK(r[i].truth.beta() == 0.4);
    CHECK(r[i].n == 500);
    if (r[i].estimate) CHECK(r[i].abs_error(Param::Alpha) == std::abs(r[i].estimate->alpha() - r[i].truth.alpha()));
  }
}

TEST_CASE("sweeps are deterministic regardless of worker count") {
  BenchScenario s;
  s.true_params = StableParams(1.2, 0.0, 1.0, 0.0);
  s.sweep = Sweep::BetaSweepAtFixedAlpha;
  s.grid = {0.0, 0.4};
  s.n_per_trial = 400;
  s.replications = 2;
  s.methods = {Method::Quantile, Method::Ecf, Method::LogMoments};
  s.base_seed = RngSeed{7};
  const std::string a = records_text(run_sweep(s));
  const std::string b = records_text(run_sweep(s));
  CHECK(a == b);
  setenv("STABLE_EST_THREADS", "1", 1);
  CHECK(harness_threads() == 1);
  const std::string c = records_text(run_sweep(s));
  unsetenv("STABLE_EST_THREADS");
  CHECK(a == c);
}

TEST_CASE("estimator failures become records") {
  BenchScenario s;
  s.true_params = StableParams(1.5, 0.0, 1.0, 0.0);
  s.grid = {1.5};
  s.n_per_trial = 200;  // below the log-moment minimum
  s.replications = 2;
  s.methods = {Method::LogMoments, Method::Quantile};
  const std::vector<BenchRecord> r = run_sweep(s);
  REQUIRE(r.size() == 4);
  CHECK(r[0].status == TrialStatus::Error);
  CHECK(r[0].detail == "SAMPLE_TOO_SMALL");
  CHECK_FALSE(r[0].estimate.has_value());
  CHECK(std::isnan(r[0].abs_error(Param::Alpha)));
  CHECK(r[1].estimate.has_value());
}

TEST_CASE("convergence schedule") {
  const std::vector<double> s = default_convergence_schedule();
  REQUIRE(s.size() == 100);
  CHECK(s.front() == 500.0);
  CHECK(s.back() == 50000.0);
  for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i] - s[i - 1] == 500.0);
}

TEST_CASE("convergence uses nested prefixes of one sample per replication") {
  BenchScenario s;
  s.true_params = StableParams(1.7, 0.4, 1.0, 0.0);
  s.sweep = Sweep::ConvergenceInN;
  s.grid = {500, 1000, 2000};
  s.replications = 2;
  s.methods = {Method::Ecf};
  s.base_seed = RngSeed{50};
  const std::vector<BenchRecord> r = run_convergence(s);
  REQUIRE(r.size() == 6);
  for (const BenchRecord& b : r) {
    CHECK(b.n == static_cast<std::size_t>(b.grid_value));
    CHECK(b.seed == 50 + static_cast<std::uint64_t>(b.replication));
  }
  CHECK(run_scenario(s).size() == 6);
  BenchScenario bad = s;
  bad.grid = {10.5};
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("scenario validation") {
  BenchScenario s;
  CHECK_THROWS_AS(s.validate(), Error);  // empty grid
  s.grid = {1.5};
  s.replications = 0;
  CHECK_THROWS_AS(s.validate(), Error);
  s.replications = 1;
  s.grid = {2.5};
  CHECK_THROWS_AS(s.validate(), Error);
  s.grid = {1.5};
  CHECK_NOTHROW(s.validate());
  CHECK(sweep_from_name(sweep_name(Sweep::BetaSweepAtFixedAlpha)) == Sweep::BetaSweepAtFixedAlpha);
}

TEST_CASE("summarize: single record") {
  const auto rows = summarize({make_record(Method::Ecf, 1.5, 1.6)});
  const SummaryRow& a = row_for(rows, Method::Ecf, Param::Alpha);
  CHECK(a.count == 1);
  CHECK(a.mae == doctest::Approx(0.1));
  CHECK(a.rmse == doctest::Approx(0.1));
  CHECK(a.bias == doctest::Approx(0.1));
  CHECK(a.median_abs_error == doctest::Approx(0.1));
  CHECK(rows.size() == 4);
}

TEST_CASE("summarize: failures and bias") {
  const auto rows = summarize({make_record(Method::Mle, 1.5, 1.6), make_record(Method::Mle, 1.5, std::nullopt, TrialStatus::Error)});
  const SummaryRow& a = row_for(rows, Method::Mle, Param::Alpha);
  CHECK(a.failures == 1);
  CHECK(a.failure_rate == doctest::Approx(0.5));
  CHECK(a.mae == doctest::Approx(0.1));

  const auto sym = summarize({make_record(Method::Ecf, 1.5, 1.6), make_record(Method::Ecf, 1.5, 1.4)});
  const SummaryRow& s = row_for(sym, Method::Ecf, Param::Alpha);
  CHECK(s.bias == doctest::Approx(0.0).scale(1.0));
  CHECK(s.mae == doctest::Approx(0.1));

  // outliers keep their estimate but stay out of the error statistics
  const auto out = summarize({make_record(Method::Mle, 0.4, 0.5), make_record(Method::Mle, 0.4, 2.0, TrialStatus::Outlier)});
  CHECK(row_for(out, Method::Mle, Param::Alpha).mae == doctest::Approx(0.1));
  CHECK(row_for(out, Method::Mle, Param::Alpha).failures == 1);

  CHECK_THROWS_AS(summarize({}), Error);
  try {
    summarize({});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyRecords);
  }
}

TEST_CASE("CSV headers") {
  std::ostringstream rec, sum, tim;
  const std::vector<BenchRecord> r{make_record(Method::Ecf, 1.5, 1.6)};
  write_records_csv(rec, r);
  write_summary_csv(sum, summarize(r));
  write_timing_csv(tim, r);
  CHECK(rec.str().rfind("grid_index,grid_value,replication,method,n,seed,status,detail,", 0) == 0);
  CHECK(sum.str().rfind("grid_value,method,param,count,failures,failure_rate,mae,rmse,bias,median_abs_error\n", 0) == 0);
  CHECK(tim.str().rfind("grid_index,replication,method,n,wall_seconds\n", 0) == 0);
}
