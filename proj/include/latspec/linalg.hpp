#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace latspec::linalg {

// Dense row-major real matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double value = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, value) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  Matrix transpose() const;
  double frobenius_norm() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);

// max |A - A^T|
double symmetry_defect(const Matrix& a);

struct EigenSystem {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column j pairs with values[j]
};

// LAPACK divide-and-conquer solver (dsyevd). Throws numerical-failure on
// non-convergence.
std::vector<double> symmetric_eigenvalues(const Matrix& a);
EigenSystem symmetric_eigen(const Matrix& a);

struct JacobiOptions {
  double tolerance = 1e-12;  // relative to ||A||_F on the off-diagonal norm
  int max_sweeps = 100;
};

// Cyclic Jacobi with a fixed row-by-row sweep order. Deterministic; intended
// for small matrices and as an independent check on the LAPACK path.
std::vector<double> jacobi_eigenvalues(const Matrix& a, const JacobiOptions& options = {});

// Partial-pivot LU factorization, PA = LU.
class LuFactorization {
 public:
  explicit LuFactorization(Matrix a);

  double determinant() const;
  // Smallest |u_ii| relative to the largest; zero when singular.
  double pivot_ratio() const;
  std::vector<double> solve(std::span<const double> rhs) const;
  Matrix solve(const Matrix& rhs) const;

 private:
  Matrix lu_;
  std::vector<std::size_t> perm_;
  int sign_ = 1;
};

// Singular values in descending order (LAPACK dgesdd).
std::vector<double> singular_values(const Matrix& a);

}  // namespace latspec::linalg
