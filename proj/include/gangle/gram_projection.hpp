#pragma once

#include <cmath>
#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gangle/errors.hpp"
#include "gangle/matrix.hpp"
#include "gangle/norm.hpp"
#include "gangle/scalar.hpp"
#include "gangle/semi_inner.hpp"
#include "gangle/space.hpp"
#include "gangle/sparse_vector.hpp"

namespace gangle {

/// [g(x_i, x_k)] (row i, column k) and its determinant Gamma.
template <Scalar T>
struct GramData {
  Matrix<T> matrix;
  T det;
};

template <Scalar T>
GramData<T> gram(const std::vector<SparseVector<T>>& basis, const SpaceSpec<T>& space) {
  if (basis.empty()) throw input_error("gram: empty basis");
  const std::size_t n = basis.size();
  Matrix<T> m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (basis[i].is_zero())
      throw degenerate_error("gram: basis vector " + std::to_string(i + 1) + " is zero");
    for (std::size_t k = 0; k < n; ++k) m(i, k) = g(basis[i], basis[k], space);
  }
  T det = determinant(m);
  return {std::move(m), std::move(det)};
}

/// True iff Gamma != 0, which guarantees linear independence. False proves
/// nothing: independent sets can have Gamma = 0.
///
/// Float mode treats |Gamma| <= 1e-10 * prod_i g(x_i, x_i) as zero.
template <Scalar T>
bool assert_independent(const GramData<T>& gd) {
  if constexpr (is_exact_v<T>) {
    return gd.det != 0;
  } else {
    double diag = 1.0;
    for (std::size_t i = 0; i < gd.matrix.rows(); ++i) diag *= std::abs(gd.matrix(i, i));
    return std::abs(gd.det) > 1e-10 * diag;
  }
}

/// An ordered basis in a given space. Gamma != 0 is not required here; the
/// operations that need it check it. The Gram data is computed at most
/// once and shared between copies.
template <Scalar T>
class Subspace {
 public:
  Subspace(std::vector<SparseVector<T>> basis, SpaceSpec<T> space)
      : basis_(std::move(basis)), space_(std::move(space)), cache_(std::make_shared<Cache>()) {
    if (basis_.empty()) throw input_error("a subspace needs at least one basis vector");
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (basis_[i].is_zero())
        throw degenerate_error("basis vector " + std::to_string(i + 1) + " is zero");
    }
  }

  const std::vector<SparseVector<T>>& basis() const noexcept { return basis_; }
  const SpaceSpec<T>& space() const noexcept { return space_; }
  std::size_t dim() const noexcept { return basis_.size(); }

  const GramData<T>& gram_data() const {
    std::call_once(cache_->once, [this] { cache_->data = gram(basis_, space_); });
    return *cache_->data;
  }

  bool nondegenerate() const { return assert_independent(gram_data()); }

  void require_nondegenerate(const char* who) const {
    if (!nondegenerate())
      throw degenerate_error(std::string(who) + ": Gram determinant of the basis is zero (" +
                             to_display_string(gram_data().det) + ")");
  }

 private:
  struct Cache {
    std::once_flag once;
    std::optional<GramData<T>> data;
  };

  std::vector<SparseVector<T>> basis_;
  SpaceSpec<T> space_;
  std::shared_ptr<Cache> cache_;
};

/// y_S with coefficients c (y_S = sum_k c_k x_k) and y - y_S.
template <Scalar T>
struct Projection {
  std::vector<T> coefficients;
  SparseVector<T> projected;
  SparseVector<T> residual;
};

/// g-orthogonal projection of y on span(S.basis()).
///
/// Solves sum_k c_k g(x_i, x_k) = g(x_i, y), i = 1..n, which by Cramer's
/// rule is the bordered-determinant form; see project_bordered. Because g
/// is linear only in its second argument the result depends on the basis,
/// not merely on its span, once the norm is not Euclidean.
template <Scalar T>
Projection<T> project(const SparseVector<T>& y, const Subspace<T>& s) {
  s.require_nondegenerate("project");
  const auto& basis = s.basis();
  std::vector<T> rhs;
  rhs.reserve(basis.size());
  for (const auto& x : basis) rhs.push_back(g(x, y, s.space()));
  std::vector<T> c = solve(s.gram_data().matrix, std::move(rhs));
  SparseVector<T> projected = linear_combination(c, basis);
  SparseVector<T> residual = subtract(y, projected);
  if constexpr (!is_exact_v<T>) {
    // Coordinates at round-off level relative to the whole computation are
    // zeroed: at p = 1 the sign of a coordinate enters g, and sgn(1e-17)
    // is not sgn(0).
    double scale_ = 0.0;
    for (const auto& [_, v] : y) scale_ = std::max(scale_, std::abs(v));
    for (std::size_t k = 0; k < basis.size(); ++k) {
      double m = 0.0;
      for (const auto& [_, v] : basis[k]) m = std::max(m, std::abs(v));
      scale_ += std::abs(c[k]) * m;
    }
    const double tol = 1e-13 * scale_;
    std::vector<typename SparseVector<T>::Entry> pe, re;
    for (const auto& e : projected)
      if (std::abs(e.second) > tol) pe.push_back(e);
    for (const auto& e : residual)
      if (std::abs(e.second) > tol) re.push_back(e);
    projected = SparseVector<T>::from_entries(std::move(pe));
    residual = SparseVector<T>::from_entries(std::move(re));
  }
  return {std::move(c), std::move(projected), std::move(residual)};
}

/// The same projection evaluated literally as
///   y_S = -(1/Gamma) | 0        x_1       ...  x_n       |
///                    | g(x_1,y) g(x_1,x_1) ... g(x_1,x_n) |
///                    | ...                                |
/// expanded along the vector row. n <= 3.
template <Scalar T>
SparseVector<T> project_bordered(const SparseVector<T>& y, const Subspace<T>& s) {
  const std::size_t n = s.dim();
  if (n > 3) throw input_error("project_bordered: only n <= 3 is supported");
  s.require_nondegenerate("project_bordered");
  const auto& basis = s.basis();
  const auto& gm = s.gram_data().matrix;

  // Rows 1..n of the bordered matrix; row 0 holds vectors and is expanded.
  Matrix<T> lower(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    lower(i, 0) = g(basis[i], y, s.space());
    for (std::size_t k = 0; k < n; ++k) lower(i, k + 1) = gm(i, k);
  }

  SparseVector<T> acc;
  for (std::size_t c = 1; c <= n; ++c) {
    Matrix<T> m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0, mk = 0; k <= n; ++k) {
        if (k == c) continue;
        m(i, mk++) = lower(i, k);
      }
    }
    const T cof = (c % 2 == 0 ? T(1) : T(-1)) * cofactor_determinant(m);
    acc = add(acc, scale(cof, basis[c - 1]));
  }
  return scale(T(T(-1) / s.gram_data().det), acc);
}

/// Left g-orthonormal sequence: x_1* = x_1 / ||x_1||, and x_k* is the
/// normalized g-orthogonal complement of x_k on span{x_1*, ..., x_{k-1}*}.
/// The output has unit norms and g(x_k*, x_l*) = 0 for k < l, and depends
/// on the order of the input.
template <Scalar T>
std::vector<SparseVector<T>> left_orthonormalize(const std::vector<SparseVector<T>>& basis,
                                                 const SpaceSpec<T>& space) {
  std::vector<SparseVector<T>> out;
  out.reserve(basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    SparseVector<T> r = basis[k];
    if (!out.empty()) r = project(basis[k], Subspace<T>(out, space)).residual;

    bool zero = r.is_zero();
    if constexpr (!is_exact_v<T>) {
      zero = zero || norm(r, space) <= 1e-12 * norm(basis[k], space);
    }
    if (zero)
      throw degenerate_error("left_orthonormalize: vector " + std::to_string(k + 1) +
                             " lies in the span of its predecessors");
    const T nr = norm(r, space);
    out.push_back(scale(T(T(1) / nr), r));
  }
  return out;
}

}  // namespace gangle
