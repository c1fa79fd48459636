#include "estimators/mcculloch_tables.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

namespace stable::detail {

namespace {

// McCulloch (1986), "Simple consistent estimators of stable distribution
// parameters", Tables III-V and VII.

constexpr std::array<double, 15> kNuAlpha = {2.439, 2.5, 2.6, 2.7, 2.8, 3, 3.2, 3.5, 4, 5, 6, 8, 10, 15, 25};
constexpr std::array<double, 7> kNuBeta = {0, 0.1, 0.2, 0.3, 0.5, 0.7, 1};

// alpha = psi1(nu_alpha, nu_beta); rows nu_alpha, columns nu_beta
constexpr double kPsi1[15][7] = {
    {2.000, 2.000, 2.000, 2.000, 2.000, 2.000, 2.000},
    {1.916, 1.924, 1.924, 1.924, 1.924, 1.924, 1.924},
    {1.808, 1.813, 1.829, 1.829, 1.829, 1.829, 1.829},
    {1.729, 1.730, 1.737, 1.745, 1.745, 1.745, 1.745},
    {1.664, 1.663, 1.663, 1.668, 1.676, 1.676, 1.676},
    {1.563, 1.560, 1.553, 1.548, 1.547, 1.547, 1.547},
    {1.484, 1.480, 1.471, 1.460, 1.448, 1.438, 1.438},
    {1.391, 1.386, 1.378, 1.364, 1.337, 1.318, 1.318},
    {1.279, 1.273, 1.266, 1.250, 1.210, 1.184, 1.150},
    {1.128, 1.121, 1.114, 1.101, 1.067, 1.027, 0.973},
    {1.029, 1.021, 1.014, 1.004, 0.974, 0.935, 0.874},
    {0.896, 0.892, 0.884, 0.883, 0.855, 0.823, 0.769},
    {0.818, 0.812, 0.806, 0.801, 0.780, 0.756, 0.691},
    {0.698, 0.695, 0.692, 0.689, 0.676, 0.656, 0.597},
    {0.593, 0.590, 0.588, 0.586, 0.579, 0.563, 0.513},
};

// beta = psi2(nu_alpha, nu_beta)
constexpr double kPsi2[15][7] = {
    {0.000, 2.160, 1.000, 1.000, 1.000, 1.000, 1.000},
    {0.000, 1.592, 3.390, 1.000, 1.000, 1.000, 1.000},
    {0.000, 0.759, 1.800, 1.000, 1.000, 1.000, 1.000},
    {0.000, 0.482, 1.048, 1.694, 1.000, 1.000, 1.000},
    {0.000, 0.360, 0.760, 1.232, 2.229, 1.000, 1.000},
    {0.000, 0.253, 0.518, 0.823, 1.575, 1.000, 1.000},
    {0.000, 0.203, 0.410, 0.632, 1.244, 1.906, 1.000},
    {0.000, 0.165, 0.332, 0.499, 0.943, 1.560, 1.000},
    {0.000, 0.136, 0.271, 0.404, 0.689, 1.230, 2.195},
    {0.000, 0.109, 0.216, 0.323, 0.539, 0.827, 1.917},
    {0.000, 0.096, 0.190, 0.284, 0.472, 0.693, 1.759},
    {0.000, 0.082, 0.163, 0.243, 0.412, 0.601, 1.596},
    {0.000, 0.074, 0.147, 0.220, 0.377, 0.546, 1.482},
    {0.000, 0.064, 0.128, 0.191, 0.330, 0.478, 1.362},
    {0.000, 0.056, 0.112, 0.167, 0.285, 0.428, 1.274},
};

constexpr std::array<double, 16> kAlpha = {0.5, 0.6, 0.7, 0.8, 0.9, 1, 1.1, 1.2, 1.3, 1.4, 1.5, 1.6, 1.7, 1.8, 1.9, 2};
constexpr std::array<double, 5> kBeta = {0, 0.25, 0.5, 0.75, 1};

// nu_c = phi3(alpha, beta); rows alpha ascending, columns beta
constexpr double kPhi3[16][5] = {
    {2.588, 3.073, 4.534, 6.636, 9.144},
    {2.337, 2.634, 3.542, 4.808, 6.247},
    {2.189, 2.392, 3.004, 3.844, 4.775},
    {2.098, 2.244, 2.676, 3.265, 3.912},
    {2.040, 2.149, 2.461, 2.886, 3.356},
    {2.000, 2.085, 2.311, 2.624, 2.973},
    {1.980, 2.040, 2.205, 2.435, 2.696},
    {1.965, 2.007, 2.125, 2.294, 2.491},
    {1.955, 1.984, 2.067, 2.188, 2.333},
    {1.946, 1.967, 2.022, 2.106, 2.211},
    {1.939, 1.952, 1.988, 2.045, 2.116},
    {1.933, 1.940, 1.962, 1.997, 2.043},
    {1.927, 1.930, 1.943, 1.961, 1.987},
    {1.921, 1.922, 1.927, 1.936, 1.947},
    {1.914, 1.915, 1.916, 1.918, 1.921},
    {1.908, 1.908, 1.908, 1.908, 1.908},
};

// nu_zeta = phi5(alpha, beta)
constexpr double kPhi5[16][5] = {
    {0.000, -0.061, -0.279, -0.659, -1.198},
    {0.000, -0.078, -0.272, -0.581, -0.997},
    {0.000, -0.089, -0.262, -0.520, -0.853},
    {0.000, -0.096, -0.250, -0.469, -0.742},
    {0.000, -0.099, -0.237, -0.424, -0.652},
    {0.000, -0.098, -0.223, -0.380, -0.576},
    {0.000, -0.095, -0.208, -0.346, -0.508},
    {0.000, -0.090, -0.192, -0.310, -0.447},
    {0.000, -0.084, -0.173, -0.276, -0.390},
    {0.000, -0.075, -0.154, -0.241, -0.335},
    {0.000, -0.066, -0.134, -0.206, -0.283},
    {0.000, -0.056, -0.111, -0.170, -0.232},
    {0.000, -0.043, -0.088, -0.132, -0.179},
    {0.000, -0.030, -0.061, -0.092, -0.123},
    {0.000, -0.017, -0.032, -0.049, -0.064},
    {0.000, 0.000, 0.000, 0.000, 0.000},
};

// Position of v in an ascending grid: lower index and weight, clamped.
template <std::size_t N>
void locate(const std::array<double, N>& grid, double v, std::size_t& i, double& w, bool& clamped) {
  if (v < grid.front() || v > grid.back()) clamped = true;
  v = std::clamp(v, grid.front(), grid.back());
  i = 0;
  while (i + 2 < N && v > grid[i + 1]) ++i;
  w = (v - grid[i]) / (grid[i + 1] - grid[i]);
}

template <std::size_t R, std::size_t C>
double bilinear(const std::array<double, R>& rows, const std::array<double, C>& cols,
                const double (&t)[R][C], double r, double c, bool& clamped) {
  std::size_t i = 0, j = 0;
  double wr = 0.0, wc = 0.0;
  locate(rows, r, i, wr, clamped);
  locate(cols, c, j, wc, clamped);
  return (1 - wr) * (1 - wc) * t[i][j] + wr * (1 - wc) * t[i + 1][j] +
         (1 - wr) * wc * t[i][j + 1] + wr * wc * t[i + 1][j + 1];
}

}  // namespace

// The tables cover nu_beta >= 0 and beta >= 0; the other half follows from
// reflection (psi1, phi3 even; psi2, phi5 odd).

TableValue psi1(double nu_alpha, double nu_beta) {
  TableValue out;
  out.value = bilinear(kNuAlpha, kNuBeta, kPsi1, nu_alpha, std::abs(nu_beta), out.clamped);
  return out;
}

TableValue psi2(double nu_alpha, double nu_beta) {
  TableValue out;
  const double v = bilinear(kNuAlpha, kNuBeta, kPsi2, nu_alpha, std::abs(nu_beta), out.clamped);
  out.value = nu_beta < 0.0 ? -v : v;
  return out;
}

TableValue phi3(double alpha, double beta) {
  TableValue out;
  out.value = bilinear(kAlpha, kBeta, kPhi3, alpha, std::abs(beta), out.clamped);
  return out;
}

TableValue phi5(double alpha, double beta) {
  TableValue out;
  const double v = bilinear(kAlpha, kBeta, kPhi5, alpha, std::abs(beta), out.clamped);
  out.value = beta < 0.0 ? -v : v;
  return out;
}

double nu_alpha_min() { return kNuAlpha.front(); }
double nu_alpha_max() { return kNuAlpha.back(); }

}  // namespace stable::detail
