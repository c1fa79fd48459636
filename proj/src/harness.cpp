#include "stable/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>
#include <tuple>

#include "stable/error.hpp"

namespace stable {

namespace {

constexpr double kOutlierAlphaError = 2.0;

double get(const StableParams& p, Param q) {
  switch (q) {
    case Param::Alpha: return p.alpha();
    case Param::Beta: return p.beta();
    case Param::Nu: return p.nu();
    case Param::Mu: return p.mu();
  }
  return std::numeric_limits<double>::quiet_NaN();
}

BenchRecord run_one(Method m, std::span<const double> data, const StableParams& truth) {
  BenchRecord r{m, 0, 0.0, data.size(), 0, 0, truth, std::nullopt, TrialStatus::Ok, {}, 0.0};
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const EstimationResult e = estimate(m, data);
    r.estimate = e.params;
    if (!e.diagnostics.converged) {
      r.status = TrialStatus::NotConverged;
    } else if (std::abs(e.params.alpha() - truth.alpha()) > kOutlierAlphaError) {
      r.status = TrialStatus::Outlier;
    }
  } catch (const Error& e) {
    r.status = TrialStatus::Error;
    r.detail = code_name(e.code());
  } catch (const std::exception& e) {
    r.status = TrialStatus::Error;
    r.detail = e.what();
  }
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

// Runs task(i) for i in [0, n) on the harness worker pool. Each task writes
// only its own output slot, so the result does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& task) {
  const unsigned workers = std::min<std::size_t>(harness_threads(), std::max<std::size_t>(n, 1));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto body = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        task(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(body);
  body();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

void sort_records(std::vector<BenchRecord>& recs, const std::vector<Method>& methods) {
  auto method_rank = [&](Method m) { return std::find(methods.begin(), methods.end(), m) - methods.begin(); };
  std::stable_sort(recs.begin(), recs.end(), [&](const BenchRecord& a, const BenchRecord& b) {
    return std::make_tuple(a.grid_index, a.replication, method_rank(a.method)) <
           std::make_tuple(b.grid_index, b.replication, method_rank(b.method));
  });
}

}  // namespace

std::string_view sweep_name(Sweep s) {
  switch (s) {
    case Sweep::BetaSweepAtFixedAlpha: return "beta";
    case Sweep::AlphaSweepAtFixedBeta: return "alpha";
    case Sweep::ConvergenceInN: return "convergence";
  }
  return "unknown";
}

Sweep sweep_from_name(std::string_view name) {
  for (Sweep s : {Sweep::BetaSweepAtFixedAlpha, Sweep::AlphaSweepAtFixedBeta, Sweep::ConvergenceInN}) {
    if (sweep_name(s) == name) return s;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown sweep '" + std::string(name) + "'");
}

std::string_view param_name(Param p) {
  switch (p) {
    case Param::Alpha: return "alpha";
    case Param::Beta: return "beta";
    case Param::Nu: return "nu";
    case Param::Mu: return "mu";
  }
  return "unknown";
}

std::string_view status_name(TrialStatus s) {
  switch (s) {
    case TrialStatus::Ok: return "ok";
    case TrialStatus::Error: return "error";
    case TrialStatus::NotConverged: return "not_converged";
    case TrialStatus::Outlier: return "outlier";
  }
  return "unknown";
}

void BenchScenario::validate() const {
  if (grid.empty()) throw Error(ErrorCode::InvalidArgument, "scenario grid is empty");
  if (replications < 1) throw Error(ErrorCode::InvalidArgument, "replications must be >= 1");
  if (methods.empty()) throw Error(ErrorCode::InvalidArgument, "no methods selected");
  for (double g : grid) {
    switch (sweep) {
      case Sweep::AlphaSweepAtFixedBeta:
        stable::validate(g, true_params.beta(), true_params.nu(), true_params.mu());
        break;
      case Sweep::BetaSweepAtFixedAlpha:
        stable::validate(true_params.alpha(), g, true_params.nu(), true_params.mu());
        break;
      case Sweep::ConvergenceInN:
        if (!(g >= 1.0) || g != std::floor(g)) {
          throw Error(ErrorCode::InvalidArgument, "prefix sizes must be positive integers");
        }
        break;
    }
  }
  if (sweep != Sweep::ConvergenceInN && n_per_trial < 1) {
    throw Error(ErrorCode::InvalidArgument, "n_per_trial must be >= 1");
  }
}

std::vector<double> default_convergence_schedule() {
  std::vector<double> out;
  for (int k = 1; k <= 100; ++k) out.push_back(500.0 * k);
  return out;
}

double BenchRecord::signed_error(Param p) const {
  if (!estimate) return std::numeric_limits<double>::quiet_NaN();
  return get(*estimate, p) - get(truth, p);
}

double BenchRecord::abs_error(Param p) const { return std::abs(signed_error(p)); }

unsigned harness_threads() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("STABLE_EST_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

std::vector<BenchRecord> run_sweep(const BenchScenario& s) {
  s.validate();
  if (s.sweep == Sweep::ConvergenceInN) {
    throw Error(ErrorCode::InvalidArgument, "run_sweep needs an alpha or beta sweep");
  }
  const std::size_t reps = static_cast<std::size_t>(s.replications);
  const std::size_t trials = s.grid.size() * reps;
  std::vector<std::vector<BenchRecord>> out(trials);
  parallel_for(trials, [&](std::size_t t) {
    const std::size_t gi = t / reps;
    const int rep = static_cast<int>(t % reps);
    const double g = s.grid[gi];
    const StableParams& p = s.true_params;
    const StableParams truth = s.sweep == Sweep::AlphaSweepAtFixedBeta ? StableParams(g, p.beta(), p.nu(), p.mu())
                                                                       : StableParams(p.alpha(), g, p.nu(), p.mu());
    const std::uint64_t seed = s.base_seed.seed + t;
    const std::vector<double> data = sample(truth, s.n_per_trial, RngSeed{seed});
    for (Method m : s.methods) {
      BenchRecord r = run_one(m, data, truth);
      r.grid_index = gi;
      r.grid_value = g;
      r.replication = rep;
      r.seed = seed;
      out[t].push_back(std::move(r));
    }
  });
  std::vector<BenchRecord> recs;
  for (auto& v : out) std::move(v.begin(), v.end(), std::back_inserter(recs));
  sort_records(recs, s.methods);
  return recs;
}

std::vector<BenchRecord> run_convergence(const BenchScenario& s) {
  s.validate();
  if (s.sweep != Sweep::ConvergenceInN) {
    throw Error(ErrorCode::InvalidArgument, "run_convergence needs a convergence scenario");
  }
  const auto longest = static_cast<std::size_t>(*std::max_element(s.grid.begin(), s.grid.end()));
  const std::size_t reps = static_cast<std::size_t>(s.replications);
  // one task per (replication, prefix), all prefixes of the same master sample
  const std::size_t trials = reps * s.grid.size();
  std::vector<std::vector<double>> masters(reps);
  for (std::size_t rep = 0; rep < reps; ++rep) {
    masters[rep] = sample(s.true_params, longest, RngSeed{s.base_seed.seed + rep});
  }
  std::vector<std::vector<BenchRecord>> out(trials);
  parallel_for(trials, [&](std::size_t t) {
    const std::size_t rep = t / s.grid.size();
    const std::size_t gi = t % s.grid.size();
    const auto n = static_cast<std::size_t>(s.grid[gi]);
    const std::span<const double> prefix(masters[rep].data(), n);
    for (Method m : s.methods) {
      BenchRecord r = run_one(m, prefix, s.true_params);
      r.grid_index = gi;
      r.grid_value = s.grid[gi];
      r.replication = static_cast<int>(rep);
      r.seed = s.base_seed.seed + rep;
      out[t].push_back(std::move(r));
    }
  });
  std::vector<BenchRecord> recs;
  for (auto& v : out) std::move(v.begin(), v.end(), std::back_inserter(recs));
  sort_records(recs, s.methods);
  return recs;
}

std::vector<BenchRecord> run_scenario(const BenchScenario& s) {
  return s.sweep == Sweep::ConvergenceInN ? run_convergence(s) : run_sweep(s);
}

std::vector<SummaryRow> summarize(const std::vector<BenchRecord>& records) {
  if (records.empty()) throw Error(ErrorCode::EmptyRecords, "no records to summarize");
  // key: grid index, method, parameter
  std::map<std::tuple<std::size_t, int, int>, std::vector<const BenchRecord*>> cells;
  for (const BenchRecord& r : records) {
    for (Param p : {Param::Alpha, Param::Beta, Param::Nu, Param::Mu}) {
      cells[{r.grid_index, static_cast<int>(r.method), static_cast<int>(p)}].push_back(&r);
    }
  }
  std::vector<SummaryRow> rows;
  for (const auto& [key, recs] : cells) {
    const Param p = static_cast<Param>(std::get<2>(key));
    SummaryRow row{recs.front()->method, recs.front()->grid_value, p, recs.size(), 0, 0.0, 0.0, 0.0, 0.0, 0.0};
    std::vector<double> abs_errs;
    double sum = 0.0, sum_abs = 0.0, sum_sq = 0.0;
    for (const BenchRecord* r : recs) {
      if (r->failed()) {
        ++row.failures;
        continue;
      }
      const double e = r->signed_error(p);
      sum += e;
      sum_abs += std::abs(e);
      sum_sq += e * e;
      abs_errs.push_back(std::abs(e));
    }
    row.failure_rate = static_cast<double>(row.failures) / static_cast<double>(row.count);
    const double ok = static_cast<double>(abs_errs.size());
    if (abs_errs.empty()) {
      row.mae = row.rmse = row.bias = row.median_abs_error = std::numeric_limits<double>::quiet_NaN();
    } else {
      row.mae = sum_abs / ok;
      row.rmse = std::sqrt(sum_sq / ok);
      row.bias = sum / ok;
      std::sort(abs_errs.begin(), abs_errs.end());
      const std::size_t h = abs_errs.size() / 2;
      row.median_abs_error = abs_errs.size() % 2 ? abs_errs[h] : 0.5 * (abs_errs[h - 1] + abs_errs[h]);
    }
    rows.push_back(row);
  }
  return rows;
}

void write_records_csv(std::ostream& os, const std::vector<BenchRecord>& records) {
  const auto old = os.precision(17);
  os << "grid_index,grid_value,replication,method,n,seed,status,detail,"
        "alpha,beta,nu,mu,alpha_hat,beta_hat,nu_hat,mu_hat,abs_err_alpha,abs_err_beta,abs_err_nu,abs_err_mu\n";
  for (const BenchRecord& r : records) {
    os << r.grid_index << ',' << r.grid_value << ',' << r.replication << ',' << method_name(r.method) << ','
       << r.n << ',' << r.seed << ',' << status_name(r.status) << ',' << r.detail;
    for (Param p : {Param::Alpha, Param::Beta, Param::Nu, Param::Mu}) os << ',' << get(r.truth, p);
    for (Param p : {Param::Alpha, Param::Beta, Param::Nu, Param::Mu}) {
      os << ',';
      if (r.estimate) os << get(*r.estimate, p);
    }
    for (Param p : {Param::Alpha, Param::Beta, Param::Nu, Param::Mu}) {
      os << ',';
      if (r.estimate) os << r.abs_error(p);
    }
    os << '\n';
  }
  os.precision(old);
}

void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows) {
  const auto old = os.precision(6);
  os << "grid_value,method,param,count,failures,failure_rate,mae,rmse,bias,median_abs_error\n";
  for (const SummaryRow& r : rows) {
    os << r.grid_value << ',' << method_name(r.method) << ',' << param_name(r.param) << ',' << r.count << ','
       << r.failures << ',' << r.failure_rate << ',' << r.mae << ',' << r.rmse << ',' << r.bias << ','
       << r.median_abs_error << '\n';
  }
  os.precision(old);
}

void write_timing_csv(std::ostream& os, const std::vector<BenchRecord>& records) {
  const auto old = os.precision(6);
  os << "grid_index,replication,method,n,wall_seconds\n";
  for (const BenchRecord& r : records) {
    os << r.grid_index << ',' << r.replication << ',' << method_name(r.method) << ',' << r.n << ','
       << r.wall_seconds << '\n';
  }
  os.precision(old);
}

}  // namespace stable
