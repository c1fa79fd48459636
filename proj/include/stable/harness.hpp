#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "stable/core.hpp"
#include "stable/estimators.hpp"
#include "stable/sampling.hpp"

namespace stable {

enum class Sweep { BetaSweepAtFixedAlpha, AlphaSweepAtFixedBeta, ConvergenceInN };

std::string_view sweep_name(Sweep s);
/// Throws InvalidArgument.
Sweep sweep_from_name(std::string_view name);

struct BenchScenario {
  StableParams true_params{1.5, 0.0, 1.0, 0.0};
  Sweep sweep = Sweep::AlphaSweepAtFixedBeta;
  /// Swept alpha or beta values, or the prefix sizes for ConvergenceInN.
  std::vector<double> grid;
  std::size_t n_per_trial = 10000;
  int replications = 50;
  std::vector<Method> methods{Method::Quantile, Method::Ecf, Method::Mle};
  RngSeed base_seed{};

  /// Throws InvalidArgument.
  void validate() const;
};

/// 500, 1000, ..., 50000.
std::vector<double> default_convergence_schedule();

enum class Param { Alpha, Beta, Nu, Mu };
std::string_view param_name(Param p);

enum class TrialStatus {
  Ok,
  Error,          // the estimator threw
  NotConverged,   // diagnostics.converged == false
  Outlier,        // |alpha_hat - alpha| > 2
};
std::string_view status_name(TrialStatus s);

struct BenchRecord {
  Method method;
  std::size_t grid_index;
  double grid_value;
  std::size_t n;
  int replication;
  std::uint64_t seed;
  StableParams truth;
  std::optional<StableParams> estimate;  // absent only when the estimator threw
  TrialStatus status = TrialStatus::Ok;
  std::string detail;  // error code name for TrialStatus::Error
  double wall_seconds = 0.0;

  bool failed() const noexcept { return status != TrialStatus::Ok; }
  /// estimate - truth; NaN when there is no estimate.
  double signed_error(Param p) const;
  double abs_error(Param p) const;
};

/// Grid point x replication x method, every method on the same sample.
std::vector<BenchRecord> run_sweep(const BenchScenario& s);
/// Nested prefixes of one master sample per replication.
std::vector<BenchRecord> run_convergence(const BenchScenario& s);
/// Dispatches on s.sweep.
std::vector<BenchRecord> run_scenario(const BenchScenario& s);

struct SummaryRow {
  Method method;
  double grid_value;
  Param param;
  std::size_t count;
  std::size_t failures;
  double failure_rate;
  double mae;
  double rmse;
  double bias;
  double median_abs_error;
};

/// One row per (method, grid point, parameter), ordered by grid point,
/// method, parameter. Failed trials only enter the failure count.
/// Throws EmptyRecords.
std::vector<SummaryRow> summarize(const std::vector<BenchRecord>& records);

/// Worker count: hardware threads, capped by STABLE_EST_THREADS.
unsigned harness_threads();

void write_records_csv(std::ostream& os, const std::vector<BenchRecord>& records);
void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows);
/// Wall times are kept out of the records file so that it is reproducible.
void write_timing_csv(std::ostream& os, const std::vector<BenchRecord>& records);

}  // namespace stable
