#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stable/core.hpp"
#include "stable/density.hpp"
#include "stable/estimators.hpp"
#include "stable/harness.hpp"
#include "stable/sampling.hpp"

namespace stable {

struct ReturnSeries {
  std::vector<double> values;
  std::string source;
  std::size_t n_dropped = 0;
};

/// Log-returns between consecutive valid prices. Missing or non-positive
/// prices are skipped (the return bridges the gap) and counted.
ReturnSeries returns_from_prices(std::span<const std::optional<double>> prices, std::string source = {});

/// Reads a CSV with a header row. Throws FileNotFound, ColumnNotFound,
/// TooFewPrices (fewer than 21 valid prices).
ReturnSeries load_returns(const std::string& path, const std::string& price_column);

/// Reads a column that already holds returns; unparseable cells are dropped
/// and counted. Throws FileNotFound, ColumnNotFound, SampleTooSmall.
ReturnSeries load_return_column(const std::string& path, const std::string& column);

struct MethodFit {
  std::string method;  // method_name() or "tls"
  std::optional<EstimationResult> stable;
  std::optional<TLocationScaleParams> tls;
  std::string error_code;  // empty on success
  std::string error_message;
};

struct FitReport {
  std::string instrument;
  std::size_t n_returns = 0;
  std::size_t n_dropped = 0;
  std::vector<MethodFit> fits;
};

/// Methods: names accepted by method_from_name, "tls", or "all". Estimator
/// errors are recorded per method rather than thrown.
FitReport cmd_fit(const ReturnSeries& returns, const std::vector<std::string>& methods,
                  const std::string& instrument);

/// One block per fit: "# stable,<method>" then instrument,alpha,beta,nu,mu,
/// or "# t-location-scale" then instrument,mu,nu,alpha_star. Six significant
/// digits.
void write_fit_tables(std::ostream& os, const FitReport& r);
void write_fit_json(std::ostream& os, const FitReport& r);

/// Columns: index,value,price with price = 100 exp(cumulative sum), left
/// empty once it overflows.
void cmd_sample(const StableParams& p, std::size_t n, RngSeed seed, std::ostream& os);

/// Columns: x followed by one column per route (fft, integral, zolotarev,
/// closed). With route "all" a route that does not apply leaves its cells
/// empty; a single route propagates its error.
void cmd_density(const StableParams& p, Window window, std::size_t points, const std::string& route,
                 std::ostream& os);

/// Columns: probability,empirical,model at p_k = (k - 1/2) / m,
/// m = min(n, 200); model quantiles by inverting the CDF.
void cmd_qq(std::span<const double> returns, const StableParams& fitted, std::ostream& os);

/// Scenario from JSON text. Keys: true_params {alpha, beta, nu, mu}, sweep
/// ("alpha" | "beta" | "convergence"), grid, n_per_trial, replications,
/// methods, base_seed. Throws ParseError / InvalidArgument.
BenchScenario parse_scenario(const std::string& json_text);

/// Writes records.csv, summary.csv and timing.csv into out_dir.
void cmd_bench(const BenchScenario& s, const std::string& out_dir);

/// {"error": {"code": ..., "message": ...}} on one line.
std::string error_json(const std::string& code, const std::string& message);

}  // namespace stable
