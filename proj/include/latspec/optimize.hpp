#pragma once

#include <functional>
#include <vector>

namespace latspec {

// A twice-differentiable function on R^d with analytic derivatives.
struct SmoothFunction {
  int dim = 0;
  std::function<double(const std::vector<double>&)> value;
  std::function<std::vector<double>(const std::vector<double>&)> gradient;
  // Row-major d x d.
  std::function<std::vector<double>(const std::vector<double>&)> hessian;
};

struct LocalExtremum {
  std::vector<double> x;
  double value = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Damped Newton descent from x0; falls back to steepest descent where the
// Hessian is not positive definite. Stops once the gradient norm is below
// grad_tol.
LocalExtremum refine_minimum(const SmoothFunction& f, std::vector<double> x0, double grad_tol = 1e-10,
                             int max_iterations = 200);
LocalExtremum refine_maximum(const SmoothFunction& f, std::vector<double> x0, double grad_tol = 1e-10,
                             int max_iterations = 200);

// Cholesky factorization of a row-major symmetric matrix; false when it is
// not (numerically) positive definite.
bool cholesky(std::vector<double>& a, int n);
// Smallest eigenvalue of a small symmetric row-major matrix.
double min_symmetric_eigenvalue(const std::vector<double>& a, int n);

}  // namespace latspec
