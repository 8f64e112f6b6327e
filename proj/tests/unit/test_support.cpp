#include <doctest.h>

#include <atomic>
#include <cmath>
#include <vector>

#include "latspec/error.hpp"
#include "latspec/intervals.hpp"
#include "latspec/optimize.hpp"
#include "latspec/parallel.hpp"

using namespace latspec;

TEST_SUITE("optimize") {
  TEST_CASE("Newton finds the minimum of a shifted quadratic-cosine") {
    SmoothFunction f;
    f.dim = 2;
    f.value = [](const std::vector<double>& x) { return 2.0 - std::cos(x[0] - 0.3) - std::cos(x[1] + 0.2); };
    f.gradient = [](const std::vector<double>& x) {
      return std::vector<double>{std::sin(x[0] - 0.3), std::sin(x[1] + 0.2)};
    };
    f.hessian = [](const std::vector<double>& x) {
      return std::vector<double>{std::cos(x[0] - 0.3), 0.0, 0.0, std::cos(x[1] + 0.2)};
    };
    const auto r = refine_minimum(f, {1.0, -1.0});
    CHECK(r.converged);
    CHECK(r.x[0] == doctest::Approx(0.3));
    CHECK(r.x[1] == doctest::Approx(-0.2));
    CHECK(r.value == doctest::Approx(0.0).epsilon(1e-12));
    const auto m = refine_maximum(f, {3.0, 2.5});
    CHECK(m.converged);
    CHECK(m.value == doctest::Approx(4.0));
  }

  TEST_CASE("Cholesky and small eigenvalue") {
    std::vector<double> a{4, 2, 2, 3};
    CHECK(cholesky(a, 2));
    std::vector<double> b{1, 2, 2, 1};
    CHECK_FALSE(cholesky(b, 2));
    CHECK(min_symmetric_eigenvalue({1, 2, 2, 1}, 2) == doctest::Approx(-1.0));
  }
}

TEST_SUITE("intervals") {
  TEST_CASE("assembly joins samples closer than the tolerance") {
    const std::vector<double> s{0.0, 0.1, 0.2, 1.0, 1.05, 3.0};
    const auto u = assemble_intervals(s, 0.15);
    REQUIRE(u.count() == 3);
    CHECK(u.intervals()[0].lo == 0.0);
    CHECK(u.intervals()[0].hi == 0.2);
    CHECK(u.intervals()[1].hi == 1.05);
    CHECK(u.intervals()[2].lo == 3.0);
    CHECK(assemble_intervals(s, 10.0).count() == 1);
    CHECK(assemble_intervals(std::vector<double>{}, 1.0).empty());
    CHECK_THROWS_AS(assemble_intervals(s, 0.0), Error);
  }

  TEST_CASE("union operations") {
    const auto a = IntervalUnion::from_intervals({{2, 3}, {0, 1}, {0.5, 1.5}});
    REQUIRE(a.count() == 2);
    CHECK(a.lower() == 0.0);
    CHECK(a.upper() == 3.0);
    CHECK(a.contains(1.2));
    CHECK_FALSE(a.contains(1.8));
    CHECK(a.contains(1.8, 0.31));
    const auto b = a.merged_with(IntervalUnion::from_intervals({{1.5, 2}}));
    CHECK(b.count() == 1);
    const auto c = IntervalUnion::from_intervals({{0, 10}}).minus_open(2, 3);
    REQUIRE(c.count() == 2);
    CHECK(c.intervals()[0].hi == 2.0);
    CHECK(c.intervals()[1].lo == 3.0);
    CHECK(hausdorff_distance(a, a) == 0.0);
    CHECK(hausdorff_distance(a, IntervalUnion::from_intervals({{0, 3}})) == doctest::Approx(0.25));
  }
}

TEST_SUITE("parallel") {
  TEST_CASE("every index visited once, exceptions propagate") {
    for (int threads : {1, 4}) {
      set_thread_count(threads);
      std::vector<std::atomic<int>> hits(257);
      parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; });
      for (auto& h : hits) CHECK(h.load() == 1);
      CHECK_THROWS_AS(parallel_for(10,
                                   [](std::size_t i) {
                                     if (i == 7) throw Error(ErrorCode::NumericalFailure, "boom");
                                   }),
                      Error);
    }
    set_thread_count(1);
  }
}
