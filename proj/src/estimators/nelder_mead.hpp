#pragma once

#include <functional>
#include <vector>

namespace stable::detail {

struct SimplexResult {
  std::vector<double> x;
  double value;
  int iterations;
  bool converged;
  // every vertex of the final simplex, best first
  std::vector<std::vector<double>> vertices;
};

struct SimplexOptions {
  int max_iterations = 500;
  double rel_tol = 1e-8;
  double initial_step = 0.1;
};

/// Minimizes f with the Nelder-Mead simplex (standard coefficients 1, 2,
/// 1/2, 1/2). Converged when the spread of values across the simplex drops to
/// rel_tol * |f_best|. Non-finite values are treated as +inf.
SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                          std::vector<double> x0, const SimplexOptions& opt = {});

}  // namespace stable::detail
