#pragma once

// Independent reference computations. Nothing here calls the library's
// projection, determinant or angle code.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "gangle/matrix.hpp"
#include "gangle/sparse_vector.hpp"

namespace gangle::testing {

inline Eigen::VectorXd dense(const SparseVector<double>& x, std::size_t n) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  for (const auto& [i, c] : x)
    if (i <= n) v(static_cast<Eigen::Index>(i - 1)) = c;
  return v;
}

inline Eigen::MatrixXd columns(const std::vector<SparseVector<double>>& vs, std::size_t n) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(vs.size()));
  for (std::size_t k = 0; k < vs.size(); ++k) m.col(static_cast<Eigen::Index>(k)) = dense(vs[k], n);
  return m;
}

/// Dense l^p norm straight from the definition.
inline double lp_norm_dense(const std::vector<double>& x, double p) {
  double s = 0.0;
  for (double v : x) s += std::pow(std::abs(v), p);
  return std::pow(s, 1.0 / p);
}

/// Orthogonal projection on the column span by the normal equations.
inline Eigen::VectorXd normal_equations_projection(const Eigen::MatrixXd& b,
                                                   const Eigen::VectorXd& y) {
  const Eigen::MatrixXd gram = b.transpose() * b;
  const Eigen::VectorXd c = gram.ldlt().solve(b.transpose() * y);
  return b * c;
}

/// Cosines of the principal angles between two column spans (descending).
inline Eigen::VectorXd principal_cosines(const Eigen::MatrixXd& u, const Eigen::MatrixXd& v) {
  const Eigen::MatrixXd qu = Eigen::HouseholderQR<Eigen::MatrixXd>(u).householderQ() *
                             Eigen::MatrixXd::Identity(u.rows(), u.cols());
  const Eigen::MatrixXd qv = Eigen::HouseholderQR<Eigen::MatrixXd>(v).householderQ() *
                             Eigen::MatrixXd::Identity(v.rows(), v.cols());
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(qu.transpose() * qv);
  return svd.singularValues();
}

/// Textbook classical Gram-Schmidt on dense columns.
inline Eigen::MatrixXd classical_gram_schmidt(const Eigen::MatrixXd& a) {
  Eigen::MatrixXd q = a;
  for (Eigen::Index k = 0; k < a.cols(); ++k) {
    Eigen::VectorXd v = a.col(k);
    for (Eigen::Index j = 0; j < k; ++j) v -= q.col(j).dot(a.col(k)) * q.col(j);
    q.col(k) = v / v.norm();
  }
  return q;
}

/// Leibniz permutation sum.
template <Scalar T>
T leibniz_determinant(const Matrix<T>& a) {
  const std::size_t n = a.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  T det(0);
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    T term(1);
    for (std::size_t i = 0; i < n; ++i) term *= a(i, perm[i]);
    det += (inversions % 2 == 0) ? term : T(-term);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

}  // namespace gangle::testing
