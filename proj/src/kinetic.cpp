#include "latspec/kinetic.hpp"

#include <algorithm>

#include "latspec/optimize.hpp"

namespace latspec {

FiberLattice::FiberLattice(const TorusGrid& grid, const TorusPoint& K)
    : grid_(grid), K_(K), offset_(K[0] / 3.0, K[1] / 3.0, K[2] / 3.0) {}

std::array<std::size_t, 3> FiberLattice::particle_indices(std::size_t point) const {
  const std::size_t i1 = point / grid_.size();
  const std::size_t i2 = point % grid_.size();
  return {i1, i2, grid_.neg(grid_.add(i1, i2))};
}

std::size_t FiberLattice::point_from(int a, std::size_t ia, int b, std::size_t ib) const {
  std::array<std::size_t, 3> idx{};
  idx[a] = ia;
  idx[b] = ib;
  const int c = 3 - a - b;
  idx[c] = grid_.neg(grid_.add(ia, ib));
  return idx[0] * grid_.size() + idx[1];
}

TorusPoint FiberLattice::momentum(int particle, std::size_t grid_index) const {
  return torus_add(offset(particle), grid_.point(grid_index));
}

std::array<TorusPoint, 3> FiberLattice::momenta(std::size_t point) const {
  const auto idx = particle_indices(point);
  return {momentum(0, idx[0]), momentum(1, idx[1]), momentum(2, idx[2])};
}

double total_symbol(const ModelConfig& model, const TorusPoint& K, const Vec3& q, const Vec3& p, Channel ch) {
  const auto k = inverse_split_three_lifted(K.c, q, p, model.masses, ch);
  return model.dispersion_at(ch.alpha, k[ch.alpha]) + model.dispersion_at(ch.beta, k[ch.beta]) +
         model.dispersion_at(ch.gamma, k[ch.gamma]);
}

double kinetic_energy(const ModelConfig& model, const std::array<TorusPoint, 3>& k) {
  return eval_dispersion(model.dispersion[0], k[0]) + eval_dispersion(model.dispersion[1], k[1]) +
         eval_dispersion(model.dispersion[2], k[2]);
}

std::vector<double> fiber_symbols(const ModelConfig& model, const FiberLattice& lattice) {
  const auto& grid = lattice.grid();
  const std::size_t n = grid.size();
  std::vector<double> e1(n), e2(n), e3(n);
  for (std::size_t i = 0; i < n; ++i) {
    e1[i] = eval_dispersion(model.dispersion[0], lattice.momentum(0, i));
    e2[i] = eval_dispersion(model.dispersion[1], lattice.momentum(1, i));
    e3[i] = eval_dispersion(model.dispersion[2], lattice.momentum(2, i));
  }
  std::vector<double> out(lattice.size());
  for (std::size_t x = 0; x < out.size(); ++x) {
    const auto idx = lattice.particle_indices(x);
    out[x] = e1[idx[0]] + e2[idx[1]] + e3[idx[2]];
  }
  return out;
}

namespace {

// f(x1, x2) = eps1(x1) + eps2(x2) + eps3(K - x1 - x2) on R^6.
SmoothFunction particle_symbol(const ModelConfig& model, const TorusPoint& K) {
  auto split = [K](const std::vector<double>& x) {
    std::array<Vec3, 3> k{};
    for (int i = 0; i < 3; ++i) {
      k[0][i] = x[i];
      k[1][i] = x[3 + i];
      k[2][i] = K[i] - x[i] - x[3 + i];
    }
    return k;
  };
  SmoothFunction f;
  f.dim = 6;
  f.value = [&model, split](const std::vector<double>& x) {
    const auto k = split(x);
    return model.dispersion_at(0, k[0]) + model.dispersion_at(1, k[1]) + model.dispersion_at(2, k[2]);
  };
  f.gradient = [&model, split](const std::vector<double>& x) {
    const auto k = split(x);
    const Vec3 g1 = dispersion_gradient(model.dispersion[0], k[0]);
    const Vec3 g2 = dispersion_gradient(model.dispersion[1], k[1]);
    const Vec3 g3 = dispersion_gradient(model.dispersion[2], k[2]);
    std::vector<double> g(6);
    for (int i = 0; i < 3; ++i) {
      g[i] = g1[i] - g3[i];
      g[3 + i] = g2[i] - g3[i];
    }
    return g;
  };
  f.hessian = [&model, split](const std::vector<double>& x) {
    const auto k = split(x);
    const Mat3 h1 = dispersion_hessian(model.dispersion[0], k[0]);
    const Mat3 h2 = dispersion_hessian(model.dispersion[1], k[1]);
    const Mat3 h3 = dispersion_hessian(model.dispersion[2], k[2]);
    std::vector<double> h(36);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        h[i * 6 + j] = h1[i][j] + h3[i][j];
        h[(3 + i) * 6 + 3 + j] = h2[i][j] + h3[i][j];
        h[i * 6 + 3 + j] = h3[i][j];
        h[(3 + i) * 6 + j] = h3[i][j];
      }
    return h;
  };
  return f;
}

// Chain rule through the linear coordinate map (q, p) -> particle momenta.
SmoothFunction channel_symbol(const ModelConfig& model, const TorusPoint& K, Channel ch) {
  const auto& md = model.masses;
  // d k_particle / d q and d k_particle / d p (scalar per axis)
  std::array<double, 3> dq{}, dp{};
  dq[ch.alpha] = 0.0;
  dp[ch.alpha] = -1.0;
  dq[ch.beta] = 1.0;
  dp[ch.beta] = md.pair[ch.gamma][ch.beta];
  dq[ch.gamma] = -1.0;
  dp[ch.gamma] = md.pair[ch.beta][ch.gamma];
  auto momenta = [&model, K, ch](const std::vector<double>& x) {
    const Vec3 q{x[0], x[1], x[2]};
    const Vec3 p{x[3], x[4], x[5]};
    return inverse_split_three_lifted(K.c, q, p, model.masses, ch);
  };
  SmoothFunction f;
  f.dim = 6;
  f.value = [&model, momenta](const std::vector<double>& x) {
    const auto k = momenta(x);
    return model.dispersion_at(0, k[0]) + model.dispersion_at(1, k[1]) + model.dispersion_at(2, k[2]);
  };
  f.gradient = [&model, momenta, dq, dp](const std::vector<double>& x) {
    const auto k = momenta(x);
    std::vector<double> g(6, 0.0);
    for (int a = 0; a < 3; ++a) {
      const Vec3 ga = dispersion_gradient(model.dispersion[a], k[a]);
      for (int i = 0; i < 3; ++i) {
        g[i] += dq[a] * ga[i];
        g[3 + i] += dp[a] * ga[i];
      }
    }
    return g;
  };
  f.hessian = [&model, momenta, dq, dp](const std::vector<double>& x) {
    const auto k = momenta(x);
    std::vector<double> h(36, 0.0);
    for (int a = 0; a < 3; ++a) {
      const Mat3 ha = dispersion_hessian(model.dispersion[a], k[a]);
      const std::array<double, 2> d{dq[a], dp[a]};
      for (int bi = 0; bi < 2; ++bi)
        for (int bj = 0; bj < 2; ++bj)
          for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) h[(3 * bi + i) * 6 + 3 * bj + j] += d[bi] * d[bj] * ha[i][j];
    }
    return h;
  };
  return f;
}

ThreeBodyBand refine_band(const SmoothFunction& f, const std::vector<double>& at_min, double grid_min,
                          const std::vector<double>& at_max, double grid_max) {
  const auto lo = refine_minimum(f, at_min);
  const auto hi = refine_maximum(f, at_max);
  return {std::min(lo.value, grid_min), std::max(hi.value, grid_max)};
}

}  // namespace

ThreeBodyBand three_body_band(const ModelConfig& model, const TorusPoint& K, const TorusGrid& grid) {
  const FiberLattice lattice(grid, K);
  const auto symbols = fiber_symbols(model, lattice);
  const auto [mn, mx] = std::minmax_element(symbols.begin(), symbols.end());
  auto start = [&](std::size_t x) {
    const auto k = lattice.momenta(x);
    return std::vector<double>{k[0][0], k[0][1], k[0][2], k[1][0], k[1][1], k[1][2]};
  };
  return refine_band(particle_symbol(model, K), start(mn - symbols.begin()), *mn, start(mx - symbols.begin()), *mx);
}

ThreeBodyBand three_body_band(const ModelConfig& model, const TorusPoint& K, const TorusGrid& grid, Channel ch) {
  const std::size_t n = grid.size();
  double best_lo = 0.0, best_hi = 0.0;
  std::vector<double> at_lo, at_hi;
  for (std::size_t iq = 0; iq < n; ++iq)
    for (std::size_t ip = 0; ip < n; ++ip) {
      const Vec3 q = grid.point(iq).c;
      const Vec3 p = grid.point(ip).c;
      const double e = total_symbol(model, K, q, p, ch);
      std::vector<double> x{q[0], q[1], q[2], p[0], p[1], p[2]};
      if (at_lo.empty() || e < best_lo) {
        best_lo = e;
        at_lo = x;
      }
      if (at_hi.empty() || e > best_hi) {
        best_hi = e;
        at_hi = x;
      }
    }
  return refine_band(channel_symbol(model, K, ch), at_lo, best_lo, at_hi, best_hi);
}

}  // namespace latspec
