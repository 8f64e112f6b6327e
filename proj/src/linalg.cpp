#include "latspec/linalg.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "latspec/error.hpp"

namespace latspec::linalg {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double Matrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  Matrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) -= b(i, j);
  return c;
}

double symmetry_defect(const Matrix& a) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j) d = std::max(d, std::abs(a(i, j) - a(j, i)));
  return d;
}

namespace {

void check_square(const Matrix& a, const char* what) {
  if (a.rows() != a.cols())
    throw Error(ErrorCode::NumericalFailure, std::string(what) + ": matrix is not square");
}

}  // namespace

std::vector<double> symmetric_eigenvalues(const Matrix& a) {
  check_square(a, "symmetric_eigenvalues");
  const auto n = static_cast<lapack_int>(a.rows());
  std::vector<double> w(a.rows());
  if (n == 0) return w;
  Matrix work = a;
  const lapack_int info = LAPACKE_dsyevd(LAPACK_ROW_MAJOR, 'N', 'U', n, work.data(), n, w.data());
  if (info != 0)
    throw Error(ErrorCode::NumericalFailure,
                "dsyevd failed to converge (info=" + std::to_string(info) + ", n=" + std::to_string(n) + ")");
  return w;
}

EigenSystem symmetric_eigen(const Matrix& a) {
  check_square(a, "symmetric_eigen");
  const auto n = static_cast<lapack_int>(a.rows());
  EigenSystem es{std::vector<double>(a.rows()), a};
  if (n == 0) return es;
  const lapack_int info = LAPACKE_dsyevd(LAPACK_ROW_MAJOR, 'V', 'U', n, es.vectors.data(), n, es.values.data());
  if (info != 0)
    throw Error(ErrorCode::NumericalFailure,
                "dsyevd failed to converge (info=" + std::to_string(info) + ", n=" + std::to_string(n) + ")");
  return es;
}

std::vector<double> jacobi_eigenvalues(const Matrix& input, const JacobiOptions& options) {
  check_square(input, "jacobi_eigenvalues");
  Matrix a = input;
  const std::size_t n = a.rows();
  const double scale = a.frobenius_norm();
  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  int sweep = 0;
  double off = off_norm();
  while (off > options.tolerance * scale) {
    if (sweep == options.max_sweeps) {
      std::ostringstream msg;
      msg << "Jacobi did not converge after " << sweep << " sweeps (off-diagonal norm " << off
          << ", target " << options.tolerance * scale << ")";
      throw Error(ErrorCode::NumericalFailure, msg.str());
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
    ++sweep;
    off = off_norm();
  }

  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = a(i, i);
  std::sort(w.begin(), w.end());
  return w;
}

LuFactorization::LuFactorization(Matrix a) : lu_(std::move(a)), perm_(lu_.rows()) {
  check_square(lu_, "LuFactorization");
  const std::size_t n = lu_.rows();
  for (std::size_t i = 0; i < n; ++i) perm_[i] = i;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(lu_(k, k));
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu_(i, k)) > best) {
        best = std::abs(lu_(i, k));
        piv = i;
      }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(piv, j));
      std::swap(perm_[k], perm_[piv]);
      sign_ = -sign_;
    }
    const double d = lu_(k, k);
    if (d == 0.0) continue;
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = lu_(i, k) / d;
      lu_(i, k) = f;
      if (f == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= f * lu_(k, j);
    }
  }
}

double LuFactorization::determinant() const {
  double det = sign_;
  for (std::size_t i = 0; i < lu_.rows(); ++i) det *= lu_(i, i);
  return det;
}

double LuFactorization::pivot_ratio() const {
  double lo = INFINITY, hi = 0.0;
  for (std::size_t i = 0; i < lu_.rows(); ++i) {
    lo = std::min(lo, std::abs(lu_(i, i)));
    hi = std::max(hi, std::abs(lu_(i, i)));
  }
  return hi > 0.0 ? lo / hi : 0.0;
}

std::vector<double> LuFactorization::solve(std::span<const double> rhs) const {
  const std::size_t n = lu_.rows();
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = rhs[perm_[i]];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) x[i] -= lu_(i, j) * x[j];
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = i + 1; j < n; ++j) x[i] -= lu_(i, j) * x[j];
    if (lu_(i, i) == 0.0) throw Error(ErrorCode::NumericalFailure, "LU solve: singular matrix");
    x[i] /= lu_(i, i);
  }
  return x;
}

Matrix LuFactorization::solve(const Matrix& rhs) const {
  Matrix out(rhs.rows(), rhs.cols());
  std::vector<double> col(rhs.rows());
  for (std::size_t j = 0; j < rhs.cols(); ++j) {
    for (std::size_t i = 0; i < rhs.rows(); ++i) col[i] = rhs(i, j);
    auto x = solve(col);
    for (std::size_t i = 0; i < rhs.rows(); ++i) out(i, j) = x[i];
  }
  return out;
}

std::vector<double> singular_values(const Matrix& a) {
  const auto m = static_cast<lapack_int>(a.rows());
  const auto n = static_cast<lapack_int>(a.cols());
  std::vector<double> s(std::min(a.rows(), a.cols()));
  if (s.empty()) return s;
  Matrix work = a;
  const lapack_int info =
      LAPACKE_dgesdd(LAPACK_ROW_MAJOR, 'N', m, n, work.data(), n, s.data(), nullptr, m, nullptr, n);
  if (info < 0) throw Error(ErrorCode::NumericalFailure, "dgesdd rejected argument " + std::to_string(-info));
  if (info > 0)
    throw Error(ErrorCode::NumericalFailure, "dgesdd failed to converge (info=" + std::to_string(info) + ")");
  return s;
}

}  // namespace latspec::linalg
