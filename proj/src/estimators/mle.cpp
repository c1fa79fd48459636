#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <numbers>
#include <sstream>

#include "density/fftw_lock.hpp"
#include "estimators/common.hpp"
#include "estimators/nelder_mead.hpp"

namespace stable {

namespace {

using std::numbers::pi;

constexpr double kDensityFloor = 1e-300;
constexpr double kBoundHit = 1e-3;
constexpr std::size_t kMinPoints = std::size_t{1} << 12;
constexpr std::size_t kMaxPoints = std::size_t{1} << 15;
constexpr double kMaxStep = 0.05;

double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }
double logit(double p) { return std::log(p / (1.0 - p)); }

double alpha_of(double z) { return kMleAlphaFloor + (2.0 - kMleAlphaFloor) * logistic(z); }
double beta_of(double z) { return 2.0 * logistic(z) - 1.0; }

fftw_plan c2r_plan(std::size_t n) {
  static std::map<std::size_t, fftw_plan> plans;
  std::lock_guard lock(detail::fftw_planner_mutex());
  if (auto it = plans.find(n); it != plans.end()) return it->second;
  fftw_complex* in = fftw_alloc_complex(n / 2 + 1);
  double* out = fftw_alloc_real(n);
  fftw_plan plan = fftw_plan_dft_c2r_1d(static_cast<int>(n), in, out, FFTW_ESTIMATE);
  fftw_free(in);
  fftw_free(out);
  plans.emplace(n, plan);
  return plan;
}

struct FftwDelete {
  void operator()(void* p) const noexcept { fftw_free(p); }
};

// Density of the standard law in the S0 form (location zeta = mu + beta nu
// tan(pi a / 2)), which is continuous in alpha through 1:
//   log cf = -|u|^a + i beta tan(pi a / 2) sign(u) (|u|^a - |u|)
// tabulated on [-h, h) by one real inverse FFT, cubic in between, power tails
// outside.
class StandardS0Table {
 public:
  StandardS0Table(double half_width, std::size_t n)
      : n_(n),
        lo_(-half_width),
        dx_(2.0 * half_width / static_cast<double>(n)),
        du_(2.0 * pi / (static_cast<double>(n) * dx_)),
        log_u_(n / 2 + 1),
        cis_lo_(n / 2 + 1),
        in_(fftw_alloc_complex(n / 2 + 1)),
        out_(fftw_alloc_real(n)),
        plan_(c2r_plan(n)) {
    for (std::size_t k = 1; k <= n / 2; ++k) {
      const double u = static_cast<double>(k) * du_;
      log_u_[k] = std::log(u);
      cis_lo_[k] = std::polar(1.0, u * lo_);
    }
    cis_lo_[0] = 1.0;
  }

  void tabulate(double alpha, double beta) {
    alpha_ = alpha;
    beta_ = beta;
    const bool one = is_alpha_one(alpha);
    const double bt = one ? 0.0 : beta * std::tan(pi * alpha / 2.0);
    in_[0][0] = 1.0;
    in_[0][1] = 0.0;
    for (std::size_t k = 1; k <= n_ / 2; ++k) {
      const double u = static_cast<double>(k) * du_;
      const double ua = std::exp(alpha * log_u_[k]);
      const double re = -ua;
      const double im = one ? -beta * (2.0 / pi) * u * log_u_[k] : bt * (ua - u);
      // conj(cf(u) exp(-i u lo)); the c2r transform has the opposite sign
      const std::complex<double> g = std::exp(std::complex<double>(re, -im)) * cis_lo_[k];
      in_[k][0] = g.real();
      in_[k][1] = g.imag();
    }
    in_[n_ / 2][1] = 0.0;
    fftw_execute_dft_c2r(plan_, in_.get(), out_.get());
    const double scale = du_ / (2.0 * pi);
    for (std::size_t j = 0; j < n_; ++j) out_.get()[j] *= scale;
    tail_ = alpha == 2.0 ? 0.0 : alpha * tail_constant(alpha);
  }

  double operator()(double y) const {
    const double t = (y - lo_) / dx_;
    const double* f = out_.get();
    if (t >= 1.0 && t < static_cast<double>(n_) - 2.0) {
      const auto i = static_cast<std::size_t>(t);
      const double r = t - static_cast<double>(i);
      const double v = -r * (r - 1.0) * (r - 2.0) / 6.0 * f[i - 1] +
                       (r + 1.0) * (r - 1.0) * (r - 2.0) / 2.0 * f[i] -
                       (r + 1.0) * r * (r - 2.0) / 2.0 * f[i + 1] + (r + 1.0) * r * (r - 1.0) / 6.0 * f[i + 2];
      return std::max(v, kDensityFloor);
    }
    const double side = y > 0.0 ? 1.0 + beta_ : 1.0 - beta_;
    return std::max(tail_ * side * std::pow(std::abs(y), -alpha_ - 1.0), kDensityFloor);
  }

 private:
  std::size_t n_;
  double lo_;
  double dx_;
  double du_;
  std::vector<double> log_u_;
  std::vector<std::complex<double>> cis_lo_;
  std::unique_ptr<fftw_complex[], FftwDelete> in_;
  std::unique_ptr<double[], FftwDelete> out_;
  fftw_plan plan_;
  double alpha_ = 2.0;
  double beta_ = 0.0;
  double tail_ = 0.0;
};

// Grid sized for the heaviest tail and roughest density the fit is expected
// to visit, alpha_init - 0.3.
StandardS0Table make_table(double alpha_init, double beta_init) {
  const double ag = std::max(kMleAlphaFloor, alpha_init - 0.3);
  const double half = std::clamp(default_fft_layout(ag, beta_init).half_width, 40.0, 400.0);
  const double dx_max = std::min(kMaxStep, pi / std::pow(25.0, 1.0 / ag));
  std::size_t n = kMinPoints;
  while (n < kMaxPoints && 2.0 * half / static_cast<double>(n) > dx_max) n *= 2;
  return StandardS0Table(half, n);
}

double zeta_of(double alpha, double beta, double nu, double mu) {
  return is_alpha_one(alpha) ? mu : mu + beta * nu * std::tan(pi * alpha / 2.0);
}

}  // namespace

EstimationResult estimate_mle(std::span<const double> sample, std::optional<StableParams> init,
                              const MleConfig& cfg) {
  detail::require_size(sample, 100, "maximum likelihood");
  detail::require_finite(sample);
  if (!init) {
    try {
      init = estimate_quantile(sample).params;
    } catch (const Error& e) {
      throw Error(ErrorCode::InitializationFailed, std::string("quantile initialization: ") + e.what());
    }
  }
  if (cfg.max_iterations <= 0) {
    Diagnostics d;
    d.converged = false;
    return {*init, Method::Mle, std::move(d)};
  }

  const detail::Spread sp = detail::median_iqr(sample);
  std::vector<double> z(sample.size());
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = (sample[i] - sp.median) / sp.iqr;
  const StableParams p0 = detail::rescale(init->alpha(), init->beta(), init->nu(), init->mu(), 1.0 / sp.iqr,
                                          -sp.median / sp.iqr);

  const double a0 = std::clamp(p0.alpha(), kMleAlphaFloor + 0.01, 1.99);
  const double b0 = std::clamp(p0.beta(), -0.99, 0.99);
  StandardS0Table table = make_table(a0, b0);

  const double n = static_cast<double>(z.size());
  auto nll = [&](const std::vector<double>& x) {
    const double alpha = alpha_of(x[0]);
    const double beta = beta_of(x[1]);
    const double nu = std::exp(x[2]);
    const double zeta = x[3];
    table.tabulate(alpha, beta);
    double s = 0.0;
    for (double v : z) s -= std::log(table((v - zeta) / nu));
    return s + n * std::log(nu);
  };

  const std::vector<double> x0{logit((a0 - kMleAlphaFloor) / (2.0 - kMleAlphaFloor)), logit((b0 + 1.0) / 2.0),
                               std::log(p0.nu()), zeta_of(p0.alpha(), p0.beta(), p0.nu(), p0.mu())};
  detail::SimplexOptions opt;
  opt.max_iterations = cfg.max_iterations;
  opt.initial_step = 0.2;
  const detail::SimplexResult r = detail::nelder_mead(nll, x0, opt);

  const double alpha = alpha_of(r.x[0]);
  if (alpha - kMleAlphaFloor < kBoundHit) {
    std::ostringstream os;
    os << "likelihood maximum at the alpha >= " << kMleAlphaFloor << " bound (alpha = " << alpha << ")";
    throw Error(ErrorCode::MleAlphaRestriction, os.str());
  }
  const double beta = beta_of(r.x[1]);
  const double nu = std::exp(r.x[2]);
  const double mu = is_alpha_one(alpha) ? r.x[3] : r.x[3] - beta * nu * std::tan(pi * alpha / 2.0);

  Diagnostics d;
  d.converged = r.converged;
  d.iterations = r.iterations;
  d.objective = r.value + n * std::log(sp.iqr);
  if (!r.converged) {
    std::ostringstream os;
    os << "no convergence after " << r.iterations << " simplex iterations";
    d.warnings.push_back(os.str());
  }
  return {detail::rescale(alpha, beta, nu, mu, sp.iqr, sp.median), Method::Mle, std::move(d)};
}

}  // namespace stable
