#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

namespace latspec {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Values within this distance of -pi are snapped to +pi.
inline constexpr double kBoundarySnap = 1e-12;

// Reduce a real number into the half-open interval (-pi, pi].
double reduce_angle(double x);

// A quasi-momentum on T^3 = (-pi, pi]^3.
struct TorusPoint {
  std::array<double, 3> c{0.0, 0.0, 0.0};

  TorusPoint() = default;
  TorusPoint(double x, double y, double z) : c{reduce_angle(x), reduce_angle(y), reduce_angle(z)} {}

  double operator[](std::size_t i) const { return c[i]; }
};

TorusPoint torus_add(const TorusPoint& a, const TorusPoint& b);
TorusPoint torus_sub(const TorusPoint& a, const TorusPoint& b);
TorusPoint torus_neg(const TorusPoint& a);
TorusPoint torus_scale(double factor, const TorusPoint& a);

// Distance on the torus, max-norm over components.
double torus_distance(const TorusPoint& a, const TorusPoint& b);

// Uniform grid of n^3 momenta 2*pi*j/n, the dual group of Z_n^3.
//
// Points are enumerated lexicographically in (j1, j2, j3), j in [0, n), with
// flat index (j1*n + j2)*n + j3. The coordinate of axis index j is 2*pi*j/n
// reduced into (-pi, pi], so index 0 is the origin. Because the grid is a
// group under torus addition, sums and negations of points are computed
// exactly on indices.
class TorusGrid {
 public:
  explicit TorusGrid(int n);

  int n() const { return n_; }
  std::size_t size() const { return points_.size(); }
  double weight() const { return weight_; }
  double spacing() const { return kTwoPi / n_; }
  const std::vector<TorusPoint>& points() const { return points_; }
  const TorusPoint& point(std::size_t i) const { return points_[i]; }

  std::size_t index(int j1, int j2, int j3) const;
  std::array<int, 3> axis_indices(std::size_t i) const;

  std::size_t add(std::size_t a, std::size_t b) const;
  std::size_t sub(std::size_t a, std::size_t b) const;
  std::size_t neg(std::size_t a) const;

  // Index of p if it coincides with a grid point (within tol per component).
  std::optional<std::size_t> find(const TorusPoint& p, double tol = 1e-9) const;

  // Indices of the 6 axis neighbours of point i (periodic).
  std::array<std::size_t, 6> neighbours(std::size_t i) const;

  // Coordinate of axis index j, exactly 2*pi*j'/n with j' in (-n/2, n/2].
  double axis_coordinate(int j) const;

 private:
  int n_;
  double weight_;
  std::vector<TorusPoint> points_;
};

TorusGrid make_grid(int n);

}  // namespace latspec
