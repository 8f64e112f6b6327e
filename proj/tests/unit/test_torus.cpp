#include <doctest.h>

#include <cmath>
#include <random>

#include "latspec/error.hpp"
#include "latspec/torus.hpp"

using namespace latspec;

namespace {
bool near(const TorusPoint& a, const TorusPoint& b, double tol) { return torus_distance(a, b) < tol; }
}  // namespace

TEST_SUITE("torus") {
  TEST_CASE("reduce_angle maps into (-pi, pi]") {
    CHECK(reduce_angle(kPi) == doctest::Approx(kPi));
    CHECK(reduce_angle(-kPi) == doctest::Approx(kPi));
    CHECK(reduce_angle(3 * kPi) == doctest::Approx(kPi));
    CHECK(reduce_angle(2 * kPi) == doctest::Approx(0.0));
    CHECK(reduce_angle(-0.5) == doctest::Approx(-0.5));
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-50.0, 50.0);
    for (int i = 0; i < 1000; ++i) {
      const double x = u(rng);
      const double r = reduce_angle(x);
      CHECK(r > -kPi);
      CHECK(r <= kPi);
      const double k = (x - r) / kTwoPi;
      CHECK(std::abs(k - std::round(k)) < 1e-9);
    }
  }

  TEST_CASE("worked addition and scaling examples") {
    const TorusPoint a(2 * kPi / 3, 3 * kPi / 4, 11 * kPi / 12);
    const TorusPoint b(2 * kPi / 3, kPi / 2, 5 * kPi / 6);
    const TorusPoint sum = torus_add(a, b);
    CHECK(std::abs(sum[0] + 2 * kPi / 3) < 1e-12);
    CHECK(std::abs(sum[1] + 3 * kPi / 4) < 1e-12);
    CHECK(std::abs(sum[2] + kPi / 4) < 1e-12);
    const TorusPoint s = torus_scale(12.0, a);
    CHECK(std::abs(s[0]) < 1e-12);
    CHECK(std::abs(s[1] - kPi) < 1e-12);
    CHECK(std::abs(s[2] - kPi) < 1e-12);
  }

  TEST_CASE("group laws on random points") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    for (int i = 0; i < 1000; ++i) {
      const TorusPoint a(u(rng), u(rng), u(rng)), b(u(rng), u(rng), u(rng)), c(u(rng), u(rng), u(rng));
      CHECK(near(torus_add(a, b), torus_add(b, a), 1e-12));
      CHECK(near(torus_add(torus_add(a, b), c), torus_add(a, torus_add(b, c)), 1e-12));
      CHECK(near(torus_add(a, torus_neg(a)), TorusPoint{}, 1e-12));
      CHECK(near(torus_sub(a, b), torus_add(a, torus_neg(b)), 1e-12));
    }
  }

  TEST_CASE("distance respects periodicity") {
    CHECK(torus_distance(TorusPoint(kPi - 0.1, 0, 0), TorusPoint(-kPi + 0.1, 0, 0)) == doctest::Approx(0.2));
    CHECK(torus_distance(TorusPoint(0.3, -0.2, 0), TorusPoint(0, 0, 0)) == doctest::Approx(0.3));
  }

  TEST_CASE("grid layout") {
    const TorusGrid g(4);
    CHECK(g.size() == 64);
    CHECK(g.weight() == doctest::Approx(std::pow(kTwoPi / 4, 3)));
    CHECK(g.point(0)[0] == 0.0);
    CHECK(g.axis_coordinate(2) == doctest::Approx(kPi));
    CHECK(g.axis_coordinate(3) == doctest::Approx(-kPi / 2));
    const auto idx = g.index(1, 2, 3);
    CHECK(idx == (1 * 4 + 2) * 4 + 3);
    CHECK(g.axis_indices(idx) == std::array<int, 3>{1, 2, 3});
    CHECK_THROWS_AS(TorusGrid(1), Error);
  }

  TEST_CASE("index arithmetic agrees with point arithmetic") {
    for (int n : {2, 3, 5, 6}) {
      const TorusGrid g(n);
      for (std::size_t a = 0; a < g.size(); a += 3)
        for (std::size_t b = 0; b < g.size(); b += 5) {
          CHECK(near(g.point(g.add(a, b)), torus_add(g.point(a), g.point(b)), 1e-12));
          CHECK(near(g.point(g.sub(a, b)), torus_sub(g.point(a), g.point(b)), 1e-12));
        }
      for (std::size_t a = 0; a < g.size(); ++a) {
        CHECK(near(g.point(g.neg(a)), torus_neg(g.point(a)), 1e-12));
        CHECK(g.find(g.point(a)) == a);
      }
    }
  }

  TEST_CASE("find and neighbours") {
    const TorusGrid g(6);
    CHECK_FALSE(g.find(TorusPoint(0.1, 0, 0)).has_value());
    CHECK(g.find(TorusPoint(-kPi, 0, 0)) == g.index(3, 0, 0));
    const auto nb = g.neighbours(0);
    for (auto i : nb) CHECK(torus_distance(g.point(i), g.point(0)) == doctest::Approx(g.spacing()));
  }
}
