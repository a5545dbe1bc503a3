#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "gangle/errors.hpp"
#include "gangle/scalar.hpp"

namespace gangle {

/// Small dense row-major matrix. Sizes here are the dimension of a
/// subspace, so nothing is blocked or vectorized.
template <Scalar T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

namespace detail {

// Row index of the pivot for column c among rows c..n-1. Exact: first
// nonzero. Float: largest magnitude (partial pivoting).
template <Scalar T>
std::size_t pick_pivot(const Matrix<T>& a, std::size_t c) {
  std::size_t best = c;
  for (std::size_t r = c; r < a.rows(); ++r) {
    if constexpr (is_exact_v<T>) {
      if (a(r, c) != 0) return r;
    } else {
      if (std::abs(a(r, c)) > std::abs(a(best, c))) best = r;
    }
  }
  return best;
}

template <Scalar T>
void swap_rows(Matrix<T>& a, std::size_t r1, std::size_t r2) {
  for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(r1, c), a(r2, c));
}

}  // namespace detail

/// Determinant by Gaussian elimination.
template <Scalar T>
T determinant(Matrix<T> a) {
  if (a.rows() != a.cols()) throw input_error("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  T det(1);
  for (std::size_t c = 0; c < n; ++c) {
    const std::size_t piv = detail::pick_pivot(a, c);
    if (a(piv, c) == 0) return T(0);
    if (piv != c) {
      detail::swap_rows(a, piv, c);
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a(r, c) == 0) continue;
      const T f = a(r, c) / a(c, c);
      for (std::size_t k = c; k < n; ++k) a(r, k) -= f * a(c, k);
    }
  }
  return det;
}

/// Solves a x = b. Throws degenerate_error when a pivot is exactly zero;
/// callers decide near-singularity themselves.
template <Scalar T>
std::vector<T> solve(Matrix<T> a, std::vector<T> b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw input_error("solve: shape mismatch");
  for (std::size_t c = 0; c < n; ++c) {
    const std::size_t piv = detail::pick_pivot(a, c);
    if (a(piv, c) == 0) throw degenerate_error("singular linear system");
    if (piv != c) {
      detail::swap_rows(a, piv, c);
      std::swap(b[piv], b[c]);
    }
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a(r, c) == 0) continue;
      const T f = a(r, c) / a(c, c);
      for (std::size_t k = c; k < n; ++k) a(r, k) -= f * a(c, k);
      b[r] -= f * b[c];
    }
  }
  std::vector<T> x(n, T(0));
  for (std::size_t i = n; i-- > 0;) {
    T s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= a(i, k) * x[k];
    x[i] = s / a(i, i);
  }
  return x;
}

/// The matrix with row r and column c removed.
template <Scalar T>
Matrix<T> minor_matrix(const Matrix<T>& a, std::size_t r, std::size_t c) {
  Matrix<T> m(a.rows() - 1, a.cols() - 1);
  for (std::size_t i = 0, mi = 0; i < a.rows(); ++i) {
    if (i == r) continue;
    for (std::size_t k = 0, mk = 0; k < a.cols(); ++k) {
      if (k == c) continue;
      m(mi, mk++) = a(i, k);
    }
    ++mi;
  }
  return m;
}

/// Laplace expansion along the first row. Factorial cost; for the small
/// literal determinant forms only.
template <Scalar T>
T cofactor_determinant(const Matrix<T>& a) {
  if (a.rows() != a.cols()) throw input_error("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return T(1);
  if (n == 1) return a(0, 0);
  if (n == 2) return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  T det(0);
  for (std::size_t c = 0; c < n; ++c) {
    if (a(0, c) == 0) continue;
    const T term = a(0, c) * cofactor_determinant(minor_matrix(a, 0, c));
    det += (c % 2 == 0) ? term : T(-term);
  }
  return det;
}

}  // namespace gangle
