#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "density/fftw_lock.hpp"
#include "stable/density.hpp"
#include "stable/error.hpp"

namespace stable {

namespace detail {

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace detail

namespace {

constexpr double kBoundaryRatio = 1e-4;
constexpr std::size_t kMaxPoints = std::size_t{1} << 22;
constexpr std::size_t kDefaultPoints = std::size_t{1} << 13;
constexpr int kMaxDoublings = 4;

struct FftwFree {
  void operator()(fftw_complex* p) const noexcept { fftw_free(p); }
};
using FftwBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

FftwBuffer alloc_buffer(std::size_t n) { return FftwBuffer(fftw_alloc_complex(n)); }

// Plans are created once per size and reused for the life of the process.
fftw_plan forward_plan(std::size_t n) {
  static std::map<std::size_t, fftw_plan> plans;
  std::lock_guard lock(detail::fftw_planner_mutex());
  if (auto it = plans.find(n); it != plans.end()) return it->second;
  auto in = alloc_buffer(n);
  auto out = alloc_buffer(n);
  fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), in.get(), out.get(), FFTW_FORWARD, FFTW_ESTIMATE);
  plans.emplace(n, plan);
  return plan;
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

DensityGrid tabulate(const StableParams& p, Window w, std::size_t n) {
  const double dx = (w.hi - w.lo) / static_cast<double>(n);
  const double du = 2.0 * std::numbers::pi / (static_cast<double>(n) * dx);
  const double half = static_cast<double>(n / 2);

  auto in = alloc_buffer(n);
  auto out = alloc_buffer(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double u = (static_cast<double>(k) - half) * du;
    const ComplexValue v = cf_eval(p, u) * std::polar(1.0, -u * w.lo);
    in[k][0] = v.real();
    in[k][1] = v.imag();
  }
  fftw_execute_dft(forward_plan(n), in.get(), out.get());

  std::vector<double> x(n);
  std::vector<double> f(n);
  double clipped = 0.0;
  const double scale = du / (2.0 * std::numbers::pi);
  for (std::size_t j = 0; j < n; ++j) {
    x[j] = w.lo + static_cast<double>(j) * dx;
    double v = scale * out[j][0];
    if (j % 2 == 1) v = -v;
    if (v < 0.0) {
      clipped = std::max(clipped, -v);
      v = 0.0;
    }
    f[j] = v;
  }
  return DensityGrid(std::move(x), std::move(f), p, clipped);
}

void check_request(const StableParams& p, Window w, std::size_t n) {
  if (!is_power_of_two(n) || n < 256) {
    throw Error(ErrorCode::InvalidArgument, "FFT point count must be a power of two >= 256");
  }
  if (!(w.lo < p.mu() && p.mu() < w.hi)) {
    throw Error(ErrorCode::InvalidArgument, "FFT window must contain mu");
  }
}

}  // namespace

DensityGrid::DensityGrid(std::vector<double> abscissae, std::vector<double> densities,
                         StableParams params, double max_clipped)
    : x_(std::move(abscissae)),
      f_(std::move(densities)),
      params_(params),
      dx_(0.0),
      max_clipped_(max_clipped) {
  if (x_.size() < 2 || x_.size() != f_.size()) {
    throw Error(ErrorCode::InvalidArgument, "density grid needs >= 2 matching abscissae and values");
  }
  // from the full span: x_[1] - x_[0] loses digits when |lo| >> spacing
  dx_ = (x_.back() - x_.front()) / static_cast<double>(x_.size() - 1);
  if (!(dx_ > 0.0) || !(x_[1] > x_[0])) throw Error(ErrorCode::InvalidArgument, "abscissae must be strictly increasing");
}

double DensityGrid::operator()(double s) const {
  if (!contains(s)) return 0.0;
  const std::size_t n = x_.size();
  const double t = (s - x_.front()) / dx_;
  auto i = static_cast<std::ptrdiff_t>(std::floor(t));
  i = std::clamp<std::ptrdiff_t>(i, 0, static_cast<std::ptrdiff_t>(n) - 2);
  const double r = t - static_cast<double>(i);
  if (i == 0 || i + 2 >= static_cast<std::ptrdiff_t>(n)) {
    return std::max(0.0, f_[i] + r * (f_[i + 1] - f_[i]));
  }
  // Four-point Lagrange on nodes i-1 .. i+2.
  const double fm = f_[i - 1], f0 = f_[i], f1 = f_[i + 1], f2 = f_[i + 2];
  const double v = -r * (r - 1.0) * (r - 2.0) / 6.0 * fm + (r + 1.0) * (r - 1.0) * (r - 2.0) / 2.0 * f0 -
                   (r + 1.0) * r * (r - 2.0) / 2.0 * f1 + (r + 1.0) * r * (r - 1.0) / 6.0 * f2;
  return std::max(0.0, v);
}

double DensityGrid::trapezoid_mass() const {
  double sum = 0.0;
  for (double v : f_) sum += v;
  return dx_ * (sum - 0.5 * (f_.front() + f_.back()));
}

FftLayout default_fft_layout(double alpha, double beta) {
  double half = 50.0;
  if (alpha < 2.0) {
    // Where the asymptotic tail density drops to ~1e-5.
    const double c = alpha * tail_constant(alpha) * (1.0 + std::abs(beta));
    half = std::max(half, std::pow(c / 1e-5, 1.0 / (1.0 + alpha)));
  }
  // Frequency cut-off where |cf| = exp(-25).
  const double u_max = std::pow(25.0, 1.0 / alpha);
  const double dx_max = std::numbers::pi / u_max;
  std::size_t n = kDefaultPoints;
  while (n < kMaxPoints && 2.0 * half / static_cast<double>(n) > dx_max) n *= 2;
  return {half, n};
}

DensityGrid pdf_fft_unchecked(const StableParams& p, Window window, std::size_t n_points) {
  check_request(p, window, n_points);
  return tabulate(p, window, n_points);
}

DensityGrid pdf_fft(const StableParams& p, Window window, std::size_t n_points) {
  check_request(p, window, n_points);
  DensityGrid grid = tabulate(p, window, n_points);
  const auto f = grid.densities();
  const double peak = *std::max_element(f.begin(), f.end());
  const double edge = std::max(f.front(), f.back());
  if (!(peak > 0.0) || edge > kBoundaryRatio * peak) {
    throw Error(ErrorCode::WindowTooNarrow, "FFT window too narrow: boundary density " +
                                                std::to_string(edge) + " vs peak " + std::to_string(peak));
  }
  return grid;
}

DensityGrid pdf_fft(const StableParams& p) {
  FftLayout layout = default_fft_layout(p.alpha(), p.beta());
  double half = layout.half_width * p.nu();
  std::size_t n = layout.n;
  for (int attempt = 0;; ++attempt) {
    try {
      return pdf_fft(p, Window{p.mu() - half, p.mu() + half}, n);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::WindowTooNarrow || attempt == kMaxDoublings) throw;
    }
    half *= 2.0;
    if (n < kMaxPoints) n *= 2;
  }
}

}  // namespace stable
