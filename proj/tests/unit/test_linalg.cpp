#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "latspec/error.hpp"
#include "latspec/linalg.hpp"

using namespace latspec;
using linalg::Matrix;

namespace {
Matrix random_symmetric(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) a(i, j) = a(j, i) = d(rng);
  return a;
}
}  // namespace

TEST_SUITE("linalg") {
  TEST_CASE("LAPACK and Jacobi eigenvalues agree") {
    for (std::size_t n : {1u, 2u, 7u, 40u}) {
      const Matrix a = random_symmetric(n, 3 + n);
      const auto x = linalg::symmetric_eigenvalues(a);
      const auto y = linalg::jacobi_eigenvalues(a);
      REQUIRE(x.size() == y.size());
      for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(x[i] - y[i]) < 1e-10);
    }
  }

  TEST_CASE("eigenvectors reconstruct the matrix") {
    const Matrix a = random_symmetric(12, 5);
    const auto es = linalg::symmetric_eigen(a);
    Matrix d(12, 12);
    for (std::size_t i = 0; i < 12; ++i) d(i, i) = es.values[i];
    const Matrix r = es.vectors * d * es.vectors.transpose();
    CHECK((r - a).frobenius_norm() < 1e-10);
  }

  TEST_CASE("Jacobi reports non-convergence") {
    linalg::JacobiOptions opts;
    opts.max_sweeps = 0;
    CHECK_THROWS_AS(linalg::jacobi_eigenvalues(random_symmetric(5, 1), opts), Error);
  }

  TEST_CASE("LU determinant and solve") {
    const Matrix a = random_symmetric(9, 8);
    const auto ev = linalg::symmetric_eigenvalues(a);
    double prod = 1.0;
    for (double e : ev) prod *= e;
    const linalg::LuFactorization lu(a);
    CHECK(lu.determinant() == doctest::Approx(prod).epsilon(1e-10));
    std::vector<double> b(9);
    for (std::size_t i = 0; i < 9; ++i) b[i] = static_cast<double>(i) - 3.0;
    const auto x = lu.solve(b);
    for (std::size_t i = 0; i < 9; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < 9; ++j) s += a(i, j) * x[j];
      CHECK(s == doctest::Approx(b[i]).epsilon(1e-10));
    }
    Matrix sing(3, 3, 1.0);
    CHECK(linalg::LuFactorization(sing).pivot_ratio() == 0.0);
  }

  TEST_CASE("singular values match eigenvalues of A^T A") {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> d;
    Matrix a(7, 5);
    for (std::size_t i = 0; i < 7; ++i)
      for (std::size_t j = 0; j < 5; ++j) a(i, j) = d(rng);
    auto s = linalg::singular_values(a);
    auto ev = linalg::symmetric_eigenvalues(a.transpose() * a);
    std::sort(ev.rbegin(), ev.rend());
    REQUIRE(s.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) CHECK(s[i] == doctest::Approx(std::sqrt(ev[i])).epsilon(1e-10));
  }

  TEST_CASE("symmetry defect") {
    Matrix a = random_symmetric(4, 2);
    CHECK(linalg::symmetry_defect(a) == 0.0);
    a(0, 3) += 0.25;
    CHECK(linalg::symmetry_defect(a) == doctest::Approx(0.25));
  }
}
