#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "stable/app.hpp"
#include "stable/error.hpp"

namespace {

using namespace stable;

struct ParamArgs {
  double alpha = 1.5;
  double beta = 0.0;
  double nu = 1.0;
  double mu = 0.0;

  void add_to(CLI::App* app, bool required) {
    auto* a = app->add_option("--alpha", alpha, "characteristic exponent in (0, 2]");
    auto* b = app->add_option("--beta", beta, "skewness in [-1, 1]");
    app->add_option("--nu", nu, "scale > 0")->capture_default_str();
    app->add_option("--mu", mu, "location")->capture_default_str();
    if (required) {
      a->required();
      b->required();
    }
  }
  StableParams get() const { return StableParams(alpha, beta, nu, mu); }
};

struct SeriesArgs {
  std::string path;
  std::string price_col;
  std::string returns_col;

  void add_to(CLI::App* app) {
    app->add_option("csv", path, "input CSV with a header row")->required();
    auto* p = app->add_option("--price-col", price_col, "price column; log-returns are computed from it");
    auto* r = app->add_option("--returns-col", returns_col, "column that already holds returns");
    p->excludes(r);
  }
  ReturnSeries load() const {
    if (!returns_col.empty()) return load_return_column(path, returns_col);
    if (price_col.empty()) throw Error(ErrorCode::InvalidArgument, "one of --price-col or --returns-col is required");
    return load_returns(path, price_col);
  }
};

// Runs body with an output stream: the named file, or stdout for "-".
template <class F>
void with_output(const std::string& out, F&& body) {
  if (out.empty() || out == "-") {
    body(std::cout);
    return;
  }
  std::ofstream f(out);
  if (!f) throw Error(ErrorCode::FileNotFound, "cannot write '" + out + "'");
  body(f);
}

Window parse_window(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw Error(ErrorCode::InvalidArgument, "--window expects lo,hi");
  try {
    return Window{std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidArgument, "--window expects two numbers, got '" + s + "'");
  }
}

std::vector<std::string> split_methods(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const std::string& r : raw) {
    std::stringstream ss(r);
    for (std::string m; std::getline(ss, m, ',');) {
      if (!m.empty()) out.push_back(m);
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"alpha-stable distributions: densities, sampling, parameter estimation and benchmarks"};
  app.require_subcommand(1);

  SeriesArgs fit_series;
  std::vector<std::string> fit_methods{"ecf"};
  std::string instrument;
  bool as_json = false;
  auto* fit = app.add_subcommand("fit", "fit stable laws (and the t location-scale law) to log-returns");
  fit_series.add_to(fit);
  fit->add_option("--method", fit_methods, "ecf|ecf-reg|quantile|logmoments|mle|tls|all (repeatable)")
      ->capture_default_str();
  fit->add_option("--instrument", instrument, "row label (default: file stem)");
  fit->add_flag("--json", as_json, "print one JSON document instead of tables");

  ParamArgs sample_params;
  std::size_t sample_n = 10000;
  std::uint64_t seed = 1;
  std::string sample_out = "-";
  auto* samp = app.add_subcommand("sample", "draw variates");
  sample_params.add_to(samp, true);
  samp->add_option("--n", sample_n, "number of draws")->capture_default_str();
  samp->add_option("--seed", seed, "generator seed")->capture_default_str();
  samp->add_option("--out", sample_out, "output CSV ('-' for stdout)")->capture_default_str();

  ParamArgs dens_params;
  std::string route = "all";
  std::string window = "-10,10";
  std::size_t points = 201;
  std::string dens_out = "-";
  auto* dens = app.add_subcommand("density", "tabulate the density");
  dens_params.add_to(dens, true);
  dens->add_option("--route", route, "fft|integral|zolotarev|closed|all")->capture_default_str();
  dens->add_option("--window", window, "lo,hi")->capture_default_str();
  dens->add_option("--points", points, "number of abscissae")->capture_default_str();
  dens->add_option("--out", dens_out, "output CSV ('-' for stdout)")->capture_default_str();

  SeriesArgs qq_series;
  std::string qq_method = "ecf";
  std::string qq_out = "-";
  auto* qq = app.add_subcommand("qq", "empirical against fitted quantiles");
  qq_series.add_to(qq);
  qq->add_option("--method", qq_method, "estimator used for the model")->capture_default_str();
  qq->add_option("--out", qq_out, "output CSV ('-' for stdout)")->capture_default_str();

  std::string scenario;
  std::string out_dir;
  auto* bench = app.add_subcommand("bench", "run a Monte Carlo scenario");
  bench->add_option("--scenario", scenario, "scenario JSON file")->required();
  bench->add_option("--out-dir", out_dir, "directory for records.csv, summary.csv, timing.csv")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << error_json("USAGE", e.what()) << '\n';
    return 1;
  }

  try {
    if (*fit) {
      const ReturnSeries r = fit_series.load();
      if (instrument.empty()) instrument = std::filesystem::path(fit_series.path).stem().string();
      const FitReport report = cmd_fit(r, split_methods(fit_methods), instrument);
      if (as_json) write_fit_json(std::cout, report); else write_fit_tables(std::cout, report);
      bool any = false;
      for (const MethodFit& f : report.fits) any = any || f.error_code.empty();
      if (!any) {
        const MethodFit& f = report.fits.front();
        std::cerr << error_json(f.error_code, f.error_message) << '\n';
        return 2;
      }
      if (r.n_dropped > 0) std::cerr << "dropped " << r.n_dropped << " invalid rows\n";
    } else if (*samp) {
      with_output(sample_out, [&](std::ostream& os) { cmd_sample(sample_params.get(), sample_n, RngSeed{seed}, os); });
    } else if (*dens) {
      const StableParams p = dens_params.get();
      const Window w = parse_window(window);
      with_output(dens_out, [&](std::ostream& os) { cmd_density(p, w, points, route, os); });
    } else if (*qq) {
      const ReturnSeries r = qq_series.load();
      const EstimationResult e = estimate(method_from_name(qq_method), r.values);
      with_output(qq_out, [&](std::ostream& os) { cmd_qq(r.values, e.params, os); });
    } else if (*bench) {
      std::ifstream in(scenario);
      if (!in) throw Error(ErrorCode::FileNotFound, "cannot open '" + scenario + "'");
      std::stringstream text;
      text << in.rdbuf();
      cmd_bench(parse_scenario(text.str()), out_dir);
    }
  } catch (const Error& e) {
    std::cerr << error_json(std::string(code_name(e.code())), e.what()) << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << error_json("INTERNAL", e.what()) << '\n';
    return 3;
  }
  return 0;
}
