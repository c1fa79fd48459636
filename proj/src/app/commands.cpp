#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "stable/app.hpp"
#include "stable/error.hpp"

namespace stable {

namespace {

using nlohmann::json;

constexpr std::size_t kMaxQqPoints = 200;

std::vector<std::string> expand_methods(const std::vector<std::string>& methods) {
  std::vector<std::string> out;
  auto add = [&](const std::string& m) {
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
  };
  for (const std::string& m : methods) {
    if (m == "all") {
      for (const char* n : {"ecf", "ecf-reg", "quantile", "logmoments", "mle", "tls"}) add(n);
    } else if (m == "tls") {
      add(m);
    } else {
      add(std::string(method_name(method_from_name(m))));
    }
  }
  if (out.empty()) throw Error(ErrorCode::InvalidArgument, "no fit method given");
  return out;
}

json params_json(const StableParams& p) {
  return {{"alpha", p.alpha()}, {"beta", p.beta()}, {"nu", p.nu()}, {"mu", p.mu()}};
}

StableParams params_from_json(const json& j) {
  return StableParams(j.at("alpha").get<double>(), j.at("beta").get<double>(), j.value("nu", 1.0),
                      j.value("mu", 0.0));
}

}  // namespace

FitReport cmd_fit(const ReturnSeries& returns, const std::vector<std::string>& methods,
                  const std::string& instrument) {
  FitReport r;
  r.instrument = instrument;
  r.n_returns = returns.values.size();
  r.n_dropped = returns.n_dropped;
  for (const std::string& m : expand_methods(methods)) {
    MethodFit f;
    f.method = m;
    try {
      if (m == "tls") {
        f.tls = fit_tls(returns.values);
      } else {
        f.stable = estimate(method_from_name(m), returns.values);
      }
    } catch (const Error& e) {
      f.error_code = code_name(e.code());
      f.error_message = e.what();
    }
    r.fits.push_back(std::move(f));
  }
  return r;
}

void write_fit_tables(std::ostream& os, const FitReport& r) {
  const auto old = os.precision(6);
  for (const MethodFit& f : r.fits) {
    if (f.method == "tls") {
      os << "# t-location-scale";
    } else {
      os << "# stable," << f.method;
    }
    if (!f.error_code.empty()) os << ",error=" << f.error_code;
    os << '\n';
    if (f.method == "tls") {
      os << "instrument,mu,nu,alpha_star\n";
      if (f.tls) os << r.instrument << ',' << f.tls->mu() << ',' << f.tls->nu() << ',' << f.tls->alpha_star() << '\n';
    } else {
      os << "instrument,alpha,beta,nu,mu\n";
      if (f.stable) {
        const StableParams& p = f.stable->params;
        os << r.instrument << ',' << p.alpha() << ',' << p.beta() << ',' << p.nu() << ',' << p.mu() << '\n';
      }
    }
  }
  os.precision(old);
}

void write_fit_json(std::ostream& os, const FitReport& r) {
  json fits = json::array();
  for (const MethodFit& f : r.fits) {
    json j{{"method", f.method}};
    if (f.stable) {
      j["params"] = params_json(f.stable->params);
      const Diagnostics& d = f.stable->diagnostics;
      j["diagnostics"] = {{"converged", d.converged}, {"iterations", d.iterations}, {"warnings", d.warnings}};
      if (d.objective) j["diagnostics"]["objective"] = *d.objective;
    }
    if (f.tls) j["params"] = {{"mu", f.tls->mu()}, {"nu", f.tls->nu()}, {"alpha_star", f.tls->alpha_star()}};
    if (!f.error_code.empty()) j["error"] = {{"code", f.error_code}, {"message", f.error_message}};
    fits.push_back(std::move(j));
  }
  const json out{{"instrument", r.instrument}, {"n_returns", r.n_returns}, {"n_dropped", r.n_dropped},
                 {"fits", fits}};
  os << out.dump(2) << '\n';
}

void cmd_sample(const StableParams& p, std::size_t n, RngSeed seed, std::ostream& os) {
  const std::vector<double> x = sample(p, n, seed);
  const auto old = os.precision(17);
  os << "index,value,price\n";
  double log_price = std::log(100.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    log_price += x[i];
    os << i << ',' << x[i] << ',';
    const double price = std::exp(log_price);
    if (std::isfinite(price) && price > 0.0) os << price;
    os << '\n';
  }
  os.precision(old);
}

void cmd_density(const StableParams& p, Window window, std::size_t points, const std::string& route,
                 std::ostream& os) {
  if (!(window.lo < window.hi) || points < 2) {
    throw Error(ErrorCode::InvalidArgument, "density needs lo < hi and at least two points");
  }
  const std::vector<std::string> all{"fft", "integral", "zolotarev", "closed"};
  std::vector<std::string> routes;
  if (route == "all") {
    routes = all;
  } else if (std::find(all.begin(), all.end(), route) != all.end()) {
    routes = {route};
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown density route '" + route + "'");
  }
  const bool lenient = routes.size() > 1;

  std::vector<double> xs(points);
  for (std::size_t i = 0; i < points; ++i) {
    xs[i] = window.lo + (window.hi - window.lo) * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  std::vector<std::vector<std::optional<double>>> cols;
  for (const std::string& r : routes) {
    std::vector<std::optional<double>> col(points);
    try {
      if (r == "fft") {
        const DensityGrid g = pdf_fft(p);
        for (std::size_t i = 0; i < points; ++i) col[i] = g(xs[i]);
      } else {
        if (r == "closed" && !has_closed_form(p)) {
          throw Error(ErrorCode::NotClosedForm, "no closed-form density for these parameters");
        }
        std::function<double(double)> f = [&](double s) { return pdf_closed(p, s); };
        if (r == "integral") f = [&](double s) { return pdf_integral(p, s); };
        if (r == "zolotarev") f = [&](double s) { return pdf_zolotarev(p, s); };
        for (std::size_t i = 0; i < points; ++i) col[i] = f(xs[i]);
      }
    } catch (const Error&) {
      if (!lenient) throw;
      col.assign(points, std::nullopt);
    }
    cols.push_back(std::move(col));
  }

  const auto old = os.precision(10);
  os << 'x';
  for (const std::string& r : routes) os << ',' << r;
  os << '\n';
  for (std::size_t i = 0; i < points; ++i) {
    os << xs[i];
    for (const auto& c : cols) {
      os << ',';
      if (c[i]) os << *c[i];
    }
    os << '\n';
  }
  os.precision(old);
}

void cmd_qq(std::span<const double> returns, const StableParams& fitted, std::ostream& os) {
  if (returns.empty()) throw Error(ErrorCode::SampleTooSmall, "no returns for the QQ table");
  std::vector<double> s(returns.begin(), returns.end());
  std::sort(s.begin(), s.end());
  const std::size_t m = std::min(s.size(), kMaxQqPoints);
  const auto old = os.precision(10);
  os << "probability,empirical,model\n";
  for (std::size_t k = 1; k <= m; ++k) {
    const double prob = (static_cast<double>(k) - 0.5) / static_cast<double>(m);
    // type-7 sample quantile
    const double h = (static_cast<double>(s.size()) - 1.0) * prob;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, s.size() - 1);
    const double emp = s[lo] + (h - static_cast<double>(lo)) * (s[hi] - s[lo]);
    os << prob << ',' << emp << ',' << quantile(fitted, prob) << '\n';
  }
  os.precision(old);
}

BenchScenario parse_scenario(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("scenario JSON: ") + e.what());
  }
  try {
    BenchScenario s;
    s.true_params = params_from_json(j.at("true_params"));
    s.sweep = sweep_from_name(j.value("sweep", std::string("alpha")));
    if (j.contains("grid")) {
      s.grid = j.at("grid").get<std::vector<double>>();
    } else if (s.sweep == Sweep::ConvergenceInN) {
      s.grid = default_convergence_schedule();
    }
    s.n_per_trial = j.value("n_per_trial", s.n_per_trial);
    s.replications = j.value("replications", s.replications);
    if (j.contains("methods")) {
      s.methods.clear();
      for (const auto& m : j.at("methods")) s.methods.push_back(method_from_name(m.get<std::string>()));
    }
    s.base_seed.seed = j.value("base_seed", std::uint64_t{0});
    s.validate();
    return s;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("scenario JSON: ") + e.what());
  }
}

void cmd_bench(const BenchScenario& s, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  const std::vector<BenchRecord> recs = run_scenario(s);
  const std::filesystem::path dir(out_dir);
  auto open = [&](const char* name) {
    std::ofstream f(dir / name);
    if (!f) throw Error(ErrorCode::FileNotFound, "cannot write " + (dir / name).string());
    return f;
  };
  {
    auto f = open("records.csv");
    write_records_csv(f, recs);
  }
  {
    auto f = open("summary.csv");
    write_summary_csv(f, summarize(recs));
  }
  {
    auto f = open("timing.csv");
    write_timing_csv(f, recs);
  }
}

std::string error_json(const std::string& code, const std::string& message) {
  return json{{"error", {{"code", code}, {"message", message}}}}.dump();
}

}  // namespace stable
