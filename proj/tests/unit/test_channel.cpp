#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "latspec/channel.hpp"
#include "latspec/kinetic.hpp"

using namespace latspec;

namespace {

ModelConfig unequal_model(double mu) {
  const auto a = LatticeCoefficients::nearest_neighbor(0.5);
  const auto b = LatticeCoefficients::nearest_neighbor(1.0);
  const auto c = LatticeCoefficients::nearest_neighbor(0.25);
  const auto v = LatticeCoefficients::zero_range(mu);
  return ModelConfig::create({a, b, c}, {v, v.scaled(0.5), v.scaled(2.0)}, 4);
}

// Per-axis brute force: for nearest-neighbour hopping t_a the symbol splits
// into a sum over axes of 6 t_a-terms, each depending on two free angles.
std::pair<double, double> axis_separable_band(const ModelConfig& m, const TorusPoint& K, int samples) {
  std::array<double, 3> t{};
  for (int a = 0; a < 3; ++a) t[a] = -m.dispersion[a].entry({1, 0, 0});
  double lo = 0.0, hi = 0.0;
  for (int i = 0; i < 3; ++i) {
    double amin = 1e300, amax = -1e300;
    for (int x = 0; x < samples; ++x)
      for (int y = 0; y < samples; ++y) {
        const double a = kTwoPi * x / samples, b = kTwoPi * y / samples;
        const double v = 2 * t[0] * (1 - std::cos(a)) + 2 * t[1] * (1 - std::cos(b)) +
                         2 * t[2] * (1 - std::cos(K[i] - a - b));
        amin = std::min(amin, v);
        amax = std::max(amax, v);
      }
    lo += amin;
    hi += amax;
  }
  return {lo, hi};
}

}  // namespace

TEST_SUITE("kinetic") {
  TEST_CASE("fiber lattice bookkeeping") {
    const TorusGrid g(3);
    const TorusPoint K(0.4, -1.0, kPi);
    const FiberLattice L(g, K);
    CHECK(L.size() == 729);
    for (std::size_t x = 0; x < L.size(); x += 7) {
      const auto k = L.momenta(x);
      CHECK(torus_distance(torus_add(k[0], torus_add(k[1], k[2])), K) < 1e-12);
      const auto idx = L.particle_indices(x);
      CHECK(L.point_from(2, idx[2], 0, idx[0]) == x);
      CHECK(L.point_from(1, idx[1], 2, idx[2]) == x);
    }
  }

  TEST_CASE("total symbol decomposes into spectator plus pair symbol") {
    const auto m = unequal_model(4.0);
    // The pair symbol depends on the lift of k, so keep k inside (-pi, pi].
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int a = 0; a < 3; ++a) {
      const Channel ch = Channel::of(a);
      for (int t = 0; t < 50; ++t) {
        const TorusPoint K(u(rng), u(rng), u(rng));
        const Vec3 q{u(rng), u(rng), u(rng)}, p{u(rng), u(rng), u(rng)};
        const double lb = m.masses.single[ch.beta] + m.masses.single[ch.gamma];
        const double la = m.masses.single[ch.alpha];
        const TorusPoint k(lb * K[0] + p[0], lb * K[1] + p[1], lb * K[2] + p[2]);
        const Vec3 ka{la * K[0] - p[0], la * K[1] - p[1], la * K[2] - p[2]};
        CHECK(total_symbol(m, K, q, p, ch) ==
              doctest::Approx(eval_dispersion(m.dispersion[a], ka) + two_body_symbol(m, ch, k, q)).epsilon(1e-12));
      }
    }
    const auto eq = ModelConfig::identical_nearest_neighbor(1.0, 4);
    CHECK(total_symbol(eq, TorusPoint{}, {0, 0, 0}, {0, 0, 0}, Channel::of(0)) == 0.0);
  }

  TEST_CASE("three-body band against per-axis brute force") {
    const auto eq = ModelConfig::identical_nearest_neighbor(1.0, 6);
    const TorusGrid g(6);
    const auto b0 = three_body_band(eq, TorusPoint{}, g);
    CHECK(b0.lo == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(b0.hi == doctest::Approx(13.5).epsilon(1e-10));
    const auto bpi = three_body_band(eq, TorusPoint(kPi, kPi, kPi), g);
    CHECK(bpi.lo == doctest::Approx(4.5).epsilon(1e-10));
    CHECK(bpi.hi == doctest::Approx(18.0).epsilon(1e-10));

    const auto m = unequal_model(1.0);
    for (const TorusPoint& K : {TorusPoint(0.3, -1.2, 2.0), TorusPoint(kPi / 2, 0, -kPi / 3)}) {
      const auto b = three_body_band(m, K, TorusGrid(5));
      const auto ref = axis_separable_band(m, K, 1200);
      CHECK(b.lo == doctest::Approx(ref.first).epsilon(1e-5));
      CHECK(b.hi == doctest::Approx(ref.second).epsilon(1e-5));
      CHECK(b.lo <= ref.first + 1e-12);
      CHECK(b.hi >= ref.second - 1e-12);
    }
  }

  TEST_CASE("band is independent of the channel coordinates") {
    const auto m = unequal_model(1.0);
    const TorusGrid g(6);
    const TorusPoint K(0.5, 1.0, -2.0);
    const auto ref = three_body_band(m, K, g);
    for (int a = 0; a < 3; ++a) {
      const auto b = three_body_band(m, K, g, Channel::of(a));
      CHECK(std::abs(b.lo - ref.lo) < 1e-10);
      CHECK(std::abs(b.hi - ref.hi) < 1e-10);
    }
    const auto symbols = fiber_symbols(m, FiberLattice(g, K));
    for (double e : symbols) {
      CHECK(e >= ref.lo - 1e-12);
      CHECK(e <= ref.hi + 1e-12);
    }
  }
}

TEST_SUITE("channel") {
  TEST_CASE("channel blocks are shifted pair fibers") {
    const auto m = unequal_model(6.0);
    const TorusGrid g(4);
    for (const TorusPoint& K : {TorusPoint{}, TorusPoint(0.7, kPi, -0.3)}) {
      const FiberLattice L(g, K);
      for (int a = 0; a < 3; ++a) {
        const Channel ch = Channel::of(a);
        for (std::size_t j = 0; j < g.size(); j += 5) {
          const auto direct = linalg::symmetric_eigenvalues(channel_block(m, ch, L, j));
          const TorusPoint ka = L.momentum(a, j);
          const auto pair = build_h_matrix(m, ch, torus_sub(K, ka), g, L.offset(ch.beta));
          auto fiber = linalg::symmetric_eigenvalues(pair.entries);
          const double shift = eval_dispersion(m.dispersion[a], ka);
          for (std::size_t i = 0; i < fiber.size(); ++i) CHECK(std::abs(direct[i] - fiber[i] - shift) < 1e-10);
        }
      }
    }
  }

  TEST_CASE("channel_fiber reports the shift and pair momentum") {
    const auto m = ModelConfig::identical_nearest_neighbor(8.0, 4);
    const TorusPoint K(0.9, 0, 0), p(0.2, -0.1, 0.3);
    const auto f = channel_fiber(m, Channel::of(0), K, p, TorusGrid(4));
    const TorusPoint ka(K[0] / 3 - p[0], K[1] / 3 - p[1], K[2] / 3 - p[2]);
    CHECK(f.shift == doctest::Approx(eval_dispersion(m.dispersion[0], ka)));
    CHECK(torus_distance(f.pair_momentum, TorusPoint(2 * K[0] / 3 + p[0], p[1], p[2])) < 1e-12);
    CHECK(f.two_body.below.size() == 1);
  }

  TEST_CASE("sigma_two against dense channel blocks") {
    const auto m = ModelConfig::identical_nearest_neighbor(10.0, 4);
    const TorusGrid g(4);
    const TorusPoint K(0.5, 0, 0);
    const FiberLattice L(g, K);
    const auto s = sigma_two(m, Channel::of(1), K, g);
    std::vector<double> fast = s.values();
    std::vector<double> dense;
    for (std::size_t j = 0; j < g.size(); ++j) {
      const auto ev = linalg::symmetric_eigenvalues(channel_block(m, Channel::of(1), L, j));
      const TorusPoint ka = L.momentum(1, j);
      const TorusPoint k = torus_sub(K, ka);
      const auto nodes = pair_nodes(m, Channel::of(1), k, g, L.offset(2));
      const double shift = eval_dispersion(m.dispersion[1], ka);
      const Band b = band(m, Channel::of(1), k, g);
      const double tol = std::max(max_symbol_gap(nodes.symbol), tolerance_floor(b.lo));
      const double thr = std::min(b.lo, *std::min_element(nodes.symbol.begin(), nodes.symbol.end())) - tol;
      for (double e : ev)
        if (e - shift < thr) dense.push_back(e);
    }
    std::sort(fast.begin(), fast.end());
    std::sort(dense.begin(), dense.end());
    REQUIRE(fast.size() == dense.size());
    for (std::size_t i = 0; i < fast.size(); ++i) CHECK(fast[i] == doctest::Approx(dense[i]).epsilon(1e-10));
    CHECK(s.gap_tol > 0.0);
    CHECK(s.gap_tol == doctest::Approx(std::max(3.0 * s.branch_continuity, tolerance_floor(0.0))));
  }

  TEST_CASE("strong coupling separates a persistent branch") {
    const auto m = ModelConfig::identical_nearest_neighbor(16.0, 6);
    const TorusGrid g(6);
    const auto c = channel_spectrum(m, Channel::of(0), TorusPoint{}, g);
    CHECK(c.sigma_two.samples.size() == g.size());
    REQUIRE(c.outside_band.count() == 1);
    CHECK(c.outside_band.upper() < c.band.lo);
    CHECK(c.spectrum.count() == 2);
    const auto pr = check_persistence(c, g, 2.0 * c.sigma_two.max_fiber_tolerance);
    CHECK(pr.holds);
    CHECK(pr.components_checked == 1);
  }

  TEST_CASE("zero potential has no two-cluster part") {
    const auto m = ModelConfig::identical_nearest_neighbor(8.0, 4).without_potentials();
    const auto c = channel_spectrum(m, Channel::of(2), TorusPoint(0.2, 0.1, 0), TorusGrid(4));
    CHECK(c.sigma_two.samples.empty());
    CHECK(c.sigma_two_intervals.empty());
    CHECK(c.spectrum.count() == 1);
  }
}
