#pragma once

#include <array>
#include <vector>

#include "latspec/model.hpp"
#include "latspec/torus.hpp"

namespace latspec {

// Discrete three-particle fiber at total momentum K.
//
// Particle momenta are k_a = K/3 + g[i_a] with i1 + i2 + i3 = 0 on the grid,
// so the fiber is closed under every pair interaction for any K and the
// three particles are sampled alike. A point is addressed by (i1, i2), flat
// index i1 * n^3 + i2.
class FiberLattice {
 public:
  FiberLattice(const TorusGrid& grid, const TorusPoint& K);

  const TorusGrid& grid() const { return grid_; }
  const TorusPoint& K() const { return K_; }
  std::size_t size() const { return grid_.size() * grid_.size(); }

  // Offset of the momenta of `particle` relative to the grid.
  const TorusPoint& offset(int) const { return offset_; }

  std::array<std::size_t, 3> particle_indices(std::size_t point) const;
  // Point holding index ia for particle a and ib for particle b (a != b).
  std::size_t point_from(int a, std::size_t ia, int b, std::size_t ib) const;
  TorusPoint momentum(int particle, std::size_t grid_index) const;
  std::array<TorusPoint, 3> momenta(std::size_t point) const;

 private:
  TorusGrid grid_;
  TorusPoint K_;
  TorusPoint offset_;
};

struct ThreeBodyBand {
  double lo = 0.0;
  double hi = 0.0;
};

// E_{alpha beta}(K; q, p) = eps_alpha(l_alpha K - p) + eps_beta(l_beta K + l_{gamma beta} p + q)
//                          + eps_gamma(l_gamma K + l_{beta gamma} p - q)
double total_symbol(const ModelConfig& model, const TorusPoint& K, const Vec3& q, const Vec3& p, Channel ch);

// Sum of the three dispersions at particle momenta.
double kinetic_energy(const ModelConfig& model, const std::array<TorusPoint, 3>& k);

// Symbol values at every fiber point, in FiberLattice order.
std::vector<double> fiber_symbols(const ModelConfig& model, const FiberLattice& lattice);

// [E_min(K), E_max(K)] from the fiber grid, refined by Newton iteration in
// the two free particle momenta.
ThreeBodyBand three_body_band(const ModelConfig& model, const TorusPoint& K, const TorusGrid& grid);
// Same extrema located in the (q, p) coordinates of channel `ch`.
ThreeBodyBand three_body_band(const ModelConfig& model, const TorusPoint& K, const TorusGrid& grid, Channel ch);

}  // namespace latspec
