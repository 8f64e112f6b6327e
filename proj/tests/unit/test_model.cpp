#include <doctest.h>

#include <cmath>
#include <random>

#include "latspec/error.hpp"
#include "latspec/model.hpp"

using namespace latspec;

namespace {

LatticeCoefficients hopping(double t) { return LatticeCoefficients::nearest_neighbor(t); }

// Radial table with next-nearest (|s|_1 = 2) terms.
LatticeCoefficients longer_range() {
  LatticeCoefficients c = LatticeCoefficients::nearest_neighbor(0.5);
  for (int x = -2; x <= 2; ++x)
    for (int y = -2; y <= 2; ++y)
      for (int z = -2; z <= 2; ++z)
        if (l1_norm({x, y, z}) == 2) c.set({x, y, z}, -0.05);
  c.set({0, 0, 0}, c.entry({0, 0, 0}) + 0.05 * 18);
  return c;
}

double direct_fourier(const LatticeCoefficients& c, const Vec3& p) {
  double s = 0.0;
  for (const auto& [v, a] : c.entries()) s += a * std::cos(v[0] * p[0] + v[1] * p[1] + v[2] * p[2]);
  return s;
}

}  // namespace

TEST_SUITE("model") {
  TEST_CASE("validation clauses") {
    CHECK(validate_dispersion(hopping(0.5)).passed());
    CHECK(validate_dispersion(longer_range()).passed());

    LatticeCoefficients wrong_sign = hopping(0.5);
    wrong_sign.set({1, 0, 0}, 0.5);
    wrong_sign.set({-1, 0, 0}, 0.5);
    wrong_sign.set({0, 1, 0}, 0.5);
    wrong_sign.set({0, -1, 0}, 0.5);
    wrong_sign.set({0, 0, 1}, 0.5);
    wrong_sign.set({0, 0, -1}, 0.5);
    const auto r = validate_dispersion(wrong_sign);
    REQUIRE(r.first_failure() != nullptr);
    CHECK(r.first_failure()->name == "sign");

    LatticeCoefficients anisotropic = hopping(0.5);
    anisotropic.set({1, 0, 0}, -0.7);
    CHECK(validate_dispersion(anisotropic).first_failure()->name == "radial");

    LatticeCoefficients neg;
    neg.set({0, 0, 0}, -1.0);
    CHECK(validate_potential(neg).first_failure()->name == "nonnegative");
    LatticeCoefficients odd;
    odd.set({1, 0, 0}, 1.0);
    CHECK(validate_potential(odd).first_failure()->name == "even");
    CHECK(validate_potential(LatticeCoefficients{}).passed());
  }

  TEST_CASE("create names the failing table and clause") {
    LatticeCoefficients bad = hopping(0.5);
    bad.set({0, 0, 1}, 0.5);
    try {
      ModelConfig::create({hopping(0.5), bad, hopping(0.5)}, {}, 4);
      FAIL("expected a validation failure");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ValidationFailure);
      const std::string msg = e.what();
      CHECK(msg.find("dispersion 2") != std::string::npos);
      CHECK(msg.find("radial") != std::string::npos);
    }
  }

  TEST_CASE("dispersion closed form and Fourier form") {
    const auto nn = hopping(0.5);
    const auto lr = longer_range();
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    for (int i = 0; i < 200; ++i) {
      const Vec3 p{u(rng), u(rng), u(rng)};
      CHECK(eval_dispersion(nn, p) == doctest::Approx(3.0 - std::cos(p[0]) - std::cos(p[1]) - std::cos(p[2])));
      CHECK(eval_dispersion(lr, p) == doctest::Approx(direct_fourier(lr, p)).epsilon(1e-12));
    }
    CHECK(eval_dispersion(nn, TorusPoint{}) == 0.0);
    CHECK(eval_dispersion(nn, TorusPoint(kPi, kPi, kPi)) == doctest::Approx(6.0));
  }

  TEST_CASE("effective mass and Hessian at zero") {
    CHECK(effective_mass(hopping(0.5)) == doctest::Approx(1.0));
    CHECK(effective_mass(hopping(1.0)) == doctest::Approx(0.5));
    for (const auto& c : {hopping(0.5), hopping(0.8), longer_range()}) {
      const double m = effective_mass(c);
      const Mat3 h = dispersion_hessian_at_zero(c);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(std::abs(h[i][j] - (i == j ? 1.0 / m : 0.0)) < 1e-10);
    }
    LatticeCoefficients flat;
    flat.set({0, 0, 0}, 1.0);
    CHECK_THROWS_AS(effective_mass(flat), Error);
  }

  TEST_CASE("gradient and Hessian against central differences") {
    const auto c = longer_range();
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    const double h = 1e-4;
    for (int t = 0; t < 50; ++t) {
      const Vec3 p{u(rng), u(rng), u(rng)};
      const Vec3 g = dispersion_gradient(c, p);
      const Mat3 H = dispersion_hessian(c, p);
      for (int i = 0; i < 3; ++i) {
        Vec3 a = p, b = p;
        a[i] += h;
        b[i] -= h;
        CHECK(g[i] == doctest::Approx((eval_dispersion(c, a) - eval_dispersion(c, b)) / (2 * h)).epsilon(1e-6));
        const Vec3 ga = dispersion_gradient(c, a), gb = dispersion_gradient(c, b);
        for (int j = 0; j < 3; ++j)
          CHECK(std::abs(H[i][j] - (ga[j] - gb[j]) / (2 * h)) < 1e-6 * (1.0 + std::abs(H[i][j])));
      }
    }
  }

  TEST_CASE("potential kernels") {
    const auto zr = LatticeCoefficients::zero_range(4.0);
    const double pref = std::pow(kTwoPi, -1.5);
    CHECK(eval_potential(zr, TorusPoint(0.3, 1, 2)) == doctest::Approx(4.0 * pref));
    CHECK(potential_sqrt_kernel(zr, TorusPoint{}) == doctest::Approx(2.0 * pref));
    CHECK(potential_norm(zr) == 4.0);
  }

  TEST_CASE("mass ratios") {
    const auto md = mass_ratios(1.0, 2.0, 3.0);
    CHECK(md.total == 6.0);
    CHECK(md.pair[0][1] == doctest::Approx(2.0 / 3.0));
    CHECK(md.pair[1][0] == doctest::Approx(1.0 / 3.0));
    CHECK(md.single[2] == doctest::Approx(0.5));
    CHECK_THROWS_AS(mass_ratios(1.0, 0.0, 1.0), Error);
  }

  TEST_CASE("coordinate maps invert each other") {
    const auto md = mass_ratios(1.0, 0.5, 2.0);
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    for (int a = 0; a < 3; ++a) {
      const Channel ch = Channel::of(a);
      for (int t = 0; t < 100; ++t) {
        const TorusPoint K(u(rng), u(rng), u(rng));
        const TorusPoint k1(u(rng), u(rng), u(rng)), k2(u(rng), u(rng), u(rng));
        const TorusPoint k3 = torus_sub(K, torus_add(k1, k2));
        const auto rc = split_three(K, {k1, k2, k3}, md, ch);
        const auto back = inverse_split_three(K, rc.q, rc.p, md, ch);
        CHECK(torus_distance(back[0], k1) < 1e-12);
        CHECK(torus_distance(back[1], k2) < 1e-12);
        CHECK(torus_distance(back[2], k3) < 1e-12);

        const TorusPoint k = torus_add(k1, k2);
        const Channel pair{2, 0, 1};
        const Vec3 q = split_two(k, k1, k2, md, pair);
        const auto kk = inverse_split_two(k, q, md, pair);
        CHECK(torus_distance(kk[0], k1) < 1e-12);
        CHECK(torus_distance(kk[1], k2) < 1e-12);
      }
    }
    CHECK_THROWS_AS(split_three(TorusPoint(0.1, 0, 0), {TorusPoint{}, TorusPoint{}, TorusPoint{}}, md, Channel::of(0)),
                    Error);
  }

  TEST_CASE("relation between channel coordinates on real lifts") {
    const auto md = mass_ratios(1.0, 0.5, 2.0);
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    for (int t = 0; t < 50; ++t) {
      const std::array<double, 3> k{u(rng), u(rng), u(rng)};
      std::array<double, 3> q{}, p{};
      for (int a = 0; a < 3; ++a) {
        const int b = (a + 1) % 3, c = (a + 2) % 3;
        q[a] = md.pair[b][c] * k[b] - md.pair[c][b] * k[c];
        p[a] = md.single[a] * (k[b] + k[c]) - (1.0 - md.single[a]) * k[a];
      }
      CHECK(std::abs(p[0] + p[1] + p[2]) < 1e-12);
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          if (a == b) continue;
          const auto r = relative_relation(md, a, b);
          CHECK(q[a] == doctest::Approx(r.d * p[a] + r.e * p[b]).epsilon(1e-12));
        }
    }
  }

  TEST_CASE("model presets") {
    const auto m = ModelConfig::identical_nearest_neighbor(8.0, 6);
    CHECK(m.grid_n == 6);
    CHECK(m.masses.m[0] == doctest::Approx(1.0));
    CHECK(m.potential_norm() == 8.0);
    CHECK(m.without_potentials().potential[1].empty());
    const auto one = m.with_only_potential(1);
    CHECK(one.potential[0].empty());
    CHECK_FALSE(one.potential[1].empty());
    CHECK(one.potential[2].empty());
  }
}
