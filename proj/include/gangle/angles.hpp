#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "gangle/errors.hpp"
#include "gangle/gram_projection.hpp"
#include "gangle/matrix.hpp"
#include "gangle/norm.hpp"
#include "gangle/scalar.hpp"
#include "gangle/semi_inner.hpp"
#include "gangle/space.hpp"
#include "gangle/sparse_vector.hpp"

namespace gangle {

enum class AnglePath { vector, dim1_projection, dim1_explicit, dim2_lambda };

inline const char* to_string(AnglePath p) {
  switch (p) {
    case AnglePath::vector: return "vector";
    case AnglePath::dim1_projection: return "dim1-projection";
    case AnglePath::dim1_explicit: return "dim1-explicit";
    case AnglePath::dim2_lambda: return "dim2-lambda";
  }
  return "?";
}

/// A g-angle. Vector angles lie in [0, pi] (signed cosine), subspace
/// angles in [0, pi/2] since only cos^2 is determined.
template <Scalar T>
struct AngleResult {
  T cos_sq;
  double angle_rad = 0.0;
  AnglePath path = AnglePath::vector;
  /// Signed cosine of a vector angle, when representable in T.
  std::optional<T> cosine;
  /// 1-dimensional U only: ||u_V||^2 / ||u||^2, and cos_sq minus it.
  std::optional<T> ratio_form;
  std::optional<T> form_gap;
  /// A float value within 1e-12 outside [0, 1] was moved onto the interval.
  bool clamped = false;
};

/// Lambda(x, y) = (||x||^2 ||y||^2 - |g(x,y)| |g(y,x)|)^(1/2).
template <Scalar T>
struct LambdaValue {
  T value_sq;
  double value = 0.0;
  /// sqrt(value_sq) when it is exactly representable in T.
  std::optional<T> exact_value;
};

namespace detail {

// Values beyond 1e-12 of [lo, hi] are reported, never clamped.
template <Scalar T>
T checked_interval(T v, const T& lo, const T& hi, const std::string& what, bool& clamped) {
  if constexpr (is_exact_v<T>) {
    if (v < lo || v > hi)
      throw property_violation(what + " = " + to_fraction_string(v) + " is out of range",
                               to_double(v));
  } else {
    if (v < lo - 1e-12 || v > hi + 1e-12)
      throw property_violation(what + " = " + to_decimal_string(v) + " is out of range", v);
    if (v < lo) {
      v = lo;
      clamped = true;
    } else if (v > hi) {
      v = hi;
      clamped = true;
    }
  }
  return v;
}

template <Scalar T>
double angle_from_cos_sq(const T& cos_sq) {
  return std::acos(std::sqrt(to_double(cos_sq)));
}

}  // namespace detail

/// A_g(x, y) = arccos(g(y, x) / (||x|| ||y||)). Note the argument order:
/// the first slot of g takes y, so A_g is not symmetric.
template <Scalar T>
AngleResult<T> angle_vectors(const SparseVector<T>& x, const SparseVector<T>& y,
                             const SpaceSpec<T>& space) {
  if (x.is_zero() || y.is_zero()) throw degenerate_error("angle between vectors needs x, y != 0");
  AngleResult<T> r;
  r.path = AnglePath::vector;
  const T gyx = g(y, x, space);
  if constexpr (is_exact_v<T>) {
    const T nxs = norm_sq(x, space);
    const T nys = norm_sq(y, space);
    r.cos_sq = detail::checked_interval(T(gyx * gyx / (nxs * nys)), T(0), T(1), "cos^2", r.clamped);
    const auto nx = exact_sqrt(nxs);
    const auto ny = exact_sqrt(nys);
    if (nx && ny) r.cosine = gyx / (*nx * *ny);
    const double c = to_double(sgn(gyx)) * std::sqrt(to_double(r.cos_sq));
    r.angle_rad = r.cosine ? std::acos(to_double(*r.cosine)) : std::acos(c);
  } else {
    const double c = detail::checked_interval(gyx / (norm(x, space) * norm(y, space)), -1.0, 1.0,
                                              "cosine", r.clamped);
    r.cosine = c;
    r.cos_sq = c * c;
    r.angle_rad = std::acos(c);
  }
  return r;
}

/// cos^2 A_g(U, V) = g(u_V, u)^2 / (||u||^2 ||u_V||^2) for U = span{u}.
///
/// Also reports the ratio form ||u_V||^2 / ||u||^2 and the gap between the
/// two, since they need not coincide when g is not additive in its first
/// argument. u_V = 0 gives cos^2 = 0 (angle pi/2).
template <Scalar T>
AngleResult<T> angle_1t(const SparseVector<T>& u, const Subspace<T>& v) {
  if (u.is_zero()) throw degenerate_error("angle_1t: u is the zero vector");
  const SpaceSpec<T>& space = v.space();
  const Projection<T> pr = project(u, v);
  const SparseVector<T>& uv = pr.projected;

  AngleResult<T> r;
  r.path = AnglePath::dim1_projection;
  const T nus = norm_sq(u, space);
  if (uv.is_zero()) {
    r.cos_sq = T(0);
    r.ratio_form = T(0);
    r.angle_rad = std::numbers::pi / 2;
    return r;
  }
  const T nuvs = norm_sq(uv, space);
  const T guv = g(uv, u, space);
  r.ratio_form = nuvs / nus;
  r.cos_sq = detail::checked_interval(T(guv * guv / (nus * nuvs)), T(0), T(1), "cos^2", r.clamped);
  r.form_gap = r.cos_sq - *r.ratio_form;
  r.angle_rad = detail::angle_from_cos_sq(r.cos_sq);
  return r;
}

/// The explicit l^p multi-index sum for cos^2 A_g(U, V), U = span{u}:
///
///   [ sum_{j_{t+1}} | sum_{j_t} ... sum_{j_1} (1/||u||) prod_i
///       |v*_{i j_i}|^(p-1) sgn(v*_{i j_i}) det M(j_1..j_{t+1}) |^p ]^(2/p)
///
/// where v* is the left g-orthonormalization of V's basis and M has
/// columns (v*_{1 j_c}, ..., v*_{t j_c}, u_{j_c}) for c <= t and
/// (v*_{1 j_{t+1}}, ..., v*_{t j_{t+1}}, 0) last. All indices run over the
/// union of supports. Equals ||u_{V*}||^2 / ||u||^2 with u_{V*} the
/// projection on the basis v*. t <= 3.
template <Scalar T>
T cos2_explicit(const SparseVector<T>& u, const Subspace<T>& v) {
  const SpaceSpec<T>& space = v.space();
  const double p = space.p();
  const std::size_t t = v.dim();
  if (t > 3) throw input_error("cos2_explicit: dim V <= 3 required");
  if constexpr (is_exact_v<T>) {
    if (!space.has_rational_exponent())
      throw backend_error("cos2_explicit in " + space.describe() + " needs float mode");
  }
  if (u.is_zero()) throw degenerate_error("cos2_explicit: u is the zero vector");
  v.require_nondegenerate("cos2_explicit");

  const std::vector<SparseVector<T>> vs = left_orthonormalize(v.basis(), space);

  const auto weight = [p](const T& x) -> T {
    if (p == 1.0) return sgn(x);
    if (p == 2.0) return x;
    if constexpr (is_exact_v<T>) {
      return T(0);  // excluded above
    } else {
      return std::pow(std::abs(x), p - 1.0) * sgn(x);
    }
  };

  std::vector<SparseVector<T>> all = vs;
  all.push_back(u);
  for (const auto& b : v.basis()) all.push_back(b);
  const std::vector<Index> joint = joint_support(all);

  std::vector<std::vector<Index>> supports;
  for (const auto& w : vs) supports.push_back(w.support());

  std::vector<T> outer;  // one inner sum per j_{t+1}
  outer.reserve(joint.size());
  std::vector<std::size_t> pos(t, 0);
  for (const Index last : joint) {
    T acc(0);
    std::fill(pos.begin(), pos.end(), 0);
    while (true) {
      T w(1);
      Matrix<T> m(t + 1, t + 1);
      for (std::size_t c = 0; c < t; ++c) {
        const Index jc = supports[c][pos[c]];
        w *= weight(vs[c][jc]);
      }
      for (std::size_t c = 0; c < t; ++c) {
        const Index jc = supports[c][pos[c]];
        for (std::size_t r = 0; r < t; ++r) m(r, c) = vs[r][jc];
        m(t, c) = u[jc];
      }
      for (std::size_t r = 0; r < t; ++r) m(r, t) = vs[r][last];
      m(t, t) = T(0);
      acc += w * cofactor_determinant(m);

      // odometer over supp(v*_1) x ... x supp(v*_t)
      std::size_t c = 0;
      while (c < t && ++pos[c] == supports[c].size()) pos[c++] = 0;
      if (c == t) break;
    }
    outer.push_back(std::move(acc));
  }

  if constexpr (is_exact_v<T>) {
    if (p == 1.0) {
      T s(0);
      for (const auto& a : outer) s += abs_value(a);
      return s * s / norm_sq(u, space);
    }
    T s(0);
    for (const auto& a : outer) s += a * a;
    return s / norm_sq(u, space);
  } else {
    const double nu = norm(u, space);
    double s = 0.0;
    for (const double a : outer) s += std::pow(std::abs(a / nu), p);
    return std::pow(s, 2.0 / p);
  }
}

/// Lambda(x, y). Zero vectors are allowed (the value is 0). Float round-off
/// below zero by at most 1e-12 ||x||^2 ||y||^2 is clamped; anything larger
/// is a property_violation.
template <Scalar T>
LambdaValue<T> lambda(const SparseVector<T>& x, const SparseVector<T>& y,
                      const SpaceSpec<T>& space) {
  const T bound = norm_sq(x, space) * norm_sq(y, space);
  LambdaValue<T> l;
  l.value_sq = bound - abs_value(g(x, y, space)) * abs_value(g(y, x, space));
  if (l.value_sq < 0) {
    if constexpr (is_exact_v<T>) {
      throw property_violation("Lambda^2 = " + to_fraction_string(l.value_sq) + " < 0",
                               to_double(l.value_sq));
    } else {
      if (-l.value_sq > 1e-12 * bound)
        throw property_violation("Lambda^2 = " + to_decimal_string(l.value_sq) + " < 0",
                                 l.value_sq);
      l.value_sq = 0.0;
    }
  }
  if constexpr (is_exact_v<T>) {
    l.exact_value = exact_sqrt(l.value_sq);
  } else {
    l.exact_value = std::sqrt(l.value_sq);
  }
  l.value = std::sqrt(to_double(l.value_sq));
  return l;
}

/// cos^2 A_g(U, V) = Lambda(u_1V, u_2V)^2 / Lambda(u_1, u_2)^2 for
/// U = span{u_1, u_2}, dim V >= 2.
template <Scalar T>
AngleResult<T> angle_2t(const Subspace<T>& u, const Subspace<T>& v) {
  if (u.dim() != 2) throw input_error("angle_2t: U must have exactly 2 basis vectors");
  if (v.dim() < 2) throw input_error("angle_2t: dim V >= 2 required");
  if (u.space().describe() != v.space().describe())
    throw input_error("angle_2t: U and V live in different spaces");
  const SpaceSpec<T>& space = v.space();
  const auto& u1 = u.basis()[0];
  const auto& u2 = u.basis()[1];

  const LambdaValue<T> lu = lambda(u1, u2, space);
  bool vanishing = lu.value_sq == 0;
  if constexpr (!is_exact_v<T>) {
    vanishing = vanishing || lu.value_sq <= 1e-12 * norm_sq(u1, space) * norm_sq(u2, space);
  }
  if (vanishing) throw degenerate_error("angle_2t: Lambda(u_1, u_2) = 0");
  v.require_nondegenerate("angle_2t");

  const LambdaValue<T> lv = lambda(project(u1, v).projected, project(u2, v).projected, space);
  AngleResult<T> r;
  r.path = AnglePath::dim2_lambda;
  r.cos_sq = detail::checked_interval(T(lv.value_sq / lu.value_sq), T(0), T(1), "cos^2",
                                      r.clamped);
  r.angle_rad = detail::angle_from_cos_sq(r.cos_sq);
  return r;
}

}  // namespace gangle
