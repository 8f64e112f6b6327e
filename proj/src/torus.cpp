#include "latspec/torus.hpp"

#include <cmath>

#include "latspec/error.hpp"

namespace latspec {

double reduce_angle(double x) {
  double r = std::fmod(x + kPi, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  double v = r - kPi;
  if (v <= -kPi + kBoundarySnap) v = kPi;
  return v;
}

TorusPoint torus_add(const TorusPoint& a, const TorusPoint& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

TorusPoint torus_sub(const TorusPoint& a, const TorusPoint& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

TorusPoint torus_neg(const TorusPoint& a) { return {-a[0], -a[1], -a[2]}; }

TorusPoint torus_scale(double factor, const TorusPoint& a) {
  return {factor * a[0], factor * a[1], factor * a[2]};
}

double torus_distance(const TorusPoint& a, const TorusPoint& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < 3; ++i) d = std::max(d, std::abs(reduce_angle(a[i] - b[i])));
  return d;
}

TorusGrid::TorusGrid(int n) : n_(n) {
  if (n < 2) throw Error(ErrorCode::InvalidResolution, "grid resolution must be >= 2, got " + std::to_string(n));
  const double h = kTwoPi / n;
  weight_ = h * h * h;
  points_.reserve(static_cast<std::size_t>(n) * n * n);
  for (int j1 = 0; j1 < n; ++j1)
    for (int j2 = 0; j2 < n; ++j2)
      for (int j3 = 0; j3 < n; ++j3) {
        TorusPoint p;
        p.c = {axis_coordinate(j1), axis_coordinate(j2), axis_coordinate(j3)};
        points_.push_back(p);
      }
}

double TorusGrid::axis_coordinate(int j) const {
  int m = ((j % n_) + n_) % n_;
  if (2 * m > n_) m -= n_;
  return kTwoPi * m / n_;
}

std::size_t TorusGrid::index(int j1, int j2, int j3) const {
  auto wrap = [this](int j) { return ((j % n_) + n_) % n_; };
  return (static_cast<std::size_t>(wrap(j1)) * n_ + wrap(j2)) * n_ + wrap(j3);
}

std::array<int, 3> TorusGrid::axis_indices(std::size_t i) const {
  const auto n = static_cast<std::size_t>(n_);
  return {static_cast<int>(i / (n * n)), static_cast<int>((i / n) % n), static_cast<int>(i % n)};
}

std::size_t TorusGrid::add(std::size_t a, std::size_t b) const {
  auto x = axis_indices(a);
  auto y = axis_indices(b);
  return index(x[0] + y[0], x[1] + y[1], x[2] + y[2]);
}

std::size_t TorusGrid::sub(std::size_t a, std::size_t b) const {
  auto x = axis_indices(a);
  auto y = axis_indices(b);
  return index(x[0] - y[0], x[1] - y[1], x[2] - y[2]);
}

std::size_t TorusGrid::neg(std::size_t a) const {
  auto x = axis_indices(a);
  return index(-x[0], -x[1], -x[2]);
}

std::optional<std::size_t> TorusGrid::find(const TorusPoint& p, double tol) const {
  std::array<int, 3> j{};
  for (std::size_t d = 0; d < 3; ++d) {
    const double t = p[d] / spacing();
    const double r = std::round(t);
    if (std::abs(t - r) * spacing() > tol) return std::nullopt;
    j[d] = static_cast<int>(r);
  }
  return index(j[0], j[1], j[2]);
}

std::array<std::size_t, 6> TorusGrid::neighbours(std::size_t i) const {
  auto x = axis_indices(i);
  return {index(x[0] + 1, x[1], x[2]), index(x[0] - 1, x[1], x[2]), index(x[0], x[1] + 1, x[2]),
          index(x[0], x[1] - 1, x[2]), index(x[0], x[1], x[2] + 1), index(x[0], x[1], x[2] - 1)};
}

TorusGrid make_grid(int n) { return TorusGrid(n); }

}  // namespace latspec
