#pragma once

namespace stable::detail {

struct TableValue {
  double value = 0.0;
  bool clamped = false;  // argument fell outside the tabulated range
};

/// alpha as a function of the quantile statistics (nu_alpha, nu_beta).
TableValue psi1(double nu_alpha, double nu_beta);
/// beta as a function of (nu_alpha, nu_beta). Raw table values can exceed 1.
TableValue psi2(double nu_alpha, double nu_beta);
/// (q75 - q25) / nu as a function of (alpha, beta).
TableValue phi3(double alpha, double beta);
/// (zeta - q50) / nu as a function of (alpha, beta).
TableValue phi5(double alpha, double beta);

double nu_alpha_min();
double nu_alpha_max();

}  // namespace stable::detail
