#include "latspec/optimize.hpp"

#include <cmath>

#include "latspec/linalg.hpp"

namespace latspec {

namespace {

double norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

bool cholesky(std::vector<double>& a, int n) {
  for (int j = 0; j < n; ++j) {
    double d = a[j * n + j];
    for (int k = 0; k < j; ++k) d -= a[j * n + k] * a[j * n + k];
    if (!(d > 0.0)) return false;
    d = std::sqrt(d);
    a[j * n + j] = d;
    for (int i = j + 1; i < n; ++i) {
      double s = a[i * n + j];
      for (int k = 0; k < j; ++k) s -= a[i * n + k] * a[j * n + k];
      a[i * n + j] = s / d;
    }
  }
  return true;
}

double min_symmetric_eigenvalue(const std::vector<double>& a, int n) {
  linalg::Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = a[i * n + j];
  return linalg::jacobi_eigenvalues(m).front();
}

LocalExtremum refine_minimum(const SmoothFunction& f, std::vector<double> x0, double grad_tol, int max_iterations) {
  const int n = f.dim;
  LocalExtremum r;
  r.x = std::move(x0);
  r.value = f.value(r.x);
  for (r.iterations = 0; r.iterations < max_iterations; ++r.iterations) {
    const auto g = f.gradient(r.x);
    r.gradient_norm = norm(g);
    if (r.gradient_norm < grad_tol) {
      r.converged = true;
      return r;
    }
    auto h = f.hessian(r.x);
    std::vector<double> step(n);
    if (cholesky(h, n)) {
      // solve L L^T d = -g
      std::vector<double> y(n);
      for (int i = 0; i < n; ++i) {
        double s = -g[i];
        for (int k = 0; k < i; ++k) s -= h[i * n + k] * y[k];
        y[i] = s / h[i * n + i];
      }
      for (int i = n - 1; i >= 0; --i) {
        double s = y[i];
        for (int k = i + 1; k < n; ++k) s -= h[k * n + i] * step[k];
        step[i] = s / h[i * n + i];
      }
    } else {
      for (int i = 0; i < n; ++i) step[i] = -g[i];
    }

    double slope = 0.0;
    for (int i = 0; i < n; ++i) slope += g[i] * step[i];
    double t = 1.0;
    bool moved = false;
    std::vector<double> trial(n);
    for (int ls = 0; ls < 60; ++ls) {
      for (int i = 0; i < n; ++i) trial[i] = r.x[i] + t * step[i];
      const double ft = f.value(trial);
      // tolerate round-off sized increases so Newton can polish the gradient
      if (ft <= r.value + 1e-4 * t * slope + 1e-14 * (1.0 + std::abs(r.value))) {
        r.x = trial;
        r.value = std::min(ft, r.value);
        moved = true;
        break;
      }
      t *= 0.5;
    }
    if (!moved) break;
  }
  r.gradient_norm = norm(f.gradient(r.x));
  r.converged = r.gradient_norm < grad_tol;
  return r;
}

LocalExtremum refine_maximum(const SmoothFunction& f, std::vector<double> x0, double grad_tol, int max_iterations) {
  SmoothFunction neg{f.dim,
                     [&](const std::vector<double>& x) { return -f.value(x); },
                     [&](const std::vector<double>& x) {
                       auto g = f.gradient(x);
                       for (double& v : g) v = -v;
                       return g;
                     },
                     [&](const std::vector<double>& x) {
                       auto h = f.hessian(x);
                       for (double& v : h) v = -v;
                       return h;
                     }};
  auto r = refine_minimum(neg, std::move(x0), grad_tol, max_iterations);
  r.value = -r.value;
  return r;
}

}  // namespace latspec
