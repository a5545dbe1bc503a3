#pragma once

#include <algorithm>
#include <cmath>
#include <optional>

#include "gangle/errors.hpp"
#include "gangle/norm.hpp"
#include "gangle/scalar.hpp"
#include "gangle/space.hpp"
#include "gangle/sparse_vector.hpp"

namespace gangle {

/// One-sided derivatives of t -> ||x + t y|| at t = 0.
///
/// step_used is 0 when the quotient is exact (piecewise-linear l^1 norm),
/// otherwise the smallest step the estimate was formed from.
template <Scalar T>
struct TauPair {
  T tau_plus;
  T tau_minus;
  T step_used;
};

namespace detail {

/// min |xi_k| / |eta_k| over the common support of x and y: the distance
/// in t to the nearest coordinate sign change of x + t y.
template <Scalar T>
std::optional<T> kink_distance(const SparseVector<T>& x, const SparseVector<T>& y) {
  std::optional<T> best;
  auto a = x.begin();
  auto b = y.begin();
  while (a != x.end() && b != y.end()) {
    if (a->first < b->first) {
      ++a;
    } else if (b->first < a->first) {
      ++b;
    } else {
      const T r = abs_value(a->second) / abs_value(b->second);
      if (!best || r < *best) best = r;
      ++a;
      ++b;
    }
  }
  return best;
}

template <Scalar T>
T norm_along(const SparseVector<T>& x, const SparseVector<T>& y, const T& t,
             const SpaceSpec<T>& space) {
  return norm(add(x, scale(t, y)), space);
}

// Smooth l^p (1 < p < inf): tau_+ = tau_- = f'(0). Central differences at
// h and h/2 combined by one Richardson step. The step stays far inside the
// nearest kink so every |xi_k + t eta_k|^p term is analytic on [-h, h].
inline TauPair<double> tau_smooth_lp(const SparseVector<double>& x,
                                     const SparseVector<double>& y,
                                     const SpaceSpec<double>& space) {
  const double nx = norm(x, space);
  const double ny = norm(y, space);
  double h = std::ldexp(nx / ny, -20);
  if (const auto k = kink_distance(x, y)) h = std::min(h, std::ldexp(*k, -10));
  const auto central = [&](double step) {
    return (norm_along(x, y, step, space) - norm_along(x, y, -step, space)) / (2.0 * step);
  };
  const double d = (4.0 * central(0.5 * h) - central(h)) / 3.0;
  return {d, d, 0.5 * h};
}

// Black-box norm: one-sided quotients Q(t) on t = s * 2^-k, k = 10..40,
// with s = ||x|| / ||y||, linearly extrapolated as 2 Q(t/2) - Q(t).
inline double one_sided_oracle(const SparseVector<double>& x, const SparseVector<double>& y,
                               const SpaceSpec<double>& space, double direction,
                               double& step_out) {
  const double nx = norm(x, space);
  const double ny = norm(y, space);
  const double s = direction * nx / ny;
  const auto quotient = [&](double t) { return (norm_along(x, y, t, space) - nx) / t; };

  double q_prev = quotient(std::ldexp(s, -10));
  std::optional<double> e_prev;
  for (int k = 10; k < 40; ++k) {
    const double t_next = std::ldexp(s, -(k + 1));
    const double q_next = quotient(t_next);
    const double e = 2.0 * q_next - q_prev;
    if (e_prev && std::abs(e - *e_prev) < 1e-9 * ny) {
      step_out = std::abs(t_next);
      return e;
    }
    e_prev = e;
    q_prev = q_next;
  }
  throw estimation_error("one-sided difference quotients did not settle for oracle '" +
                             space.oracle().name + "'",
                         e_prev.value_or(q_prev), q_prev);
}

}  // namespace detail

/// tau_+(x, y) and tau_-(x, y).
///
/// l^1 is piecewise linear in t, so the quotient is evaluated exactly at
/// half the distance to the nearest kink (any step when supports do not
/// meet). Smooth l^p uses Richardson-extrapolated central differences and
/// oracle norms use extrapolated one-sided quotients; both need float mode.
template <Scalar T>
TauPair<T> tau(const SparseVector<T>& x, const SparseVector<T>& y, const SpaceSpec<T>& space) {
  if (x.is_zero()) throw degenerate_error("tau(x, y) is undefined for x = 0");
  if (y.is_zero()) return {T(0), T(0), T(0)};

  if (space.is_lp() && space.p() == 1.0) {
    const auto kink = detail::kink_distance(x, y);
    const T step = kink ? T(*kink / 2) : T(1);
    const T nx = norm(x, space);
    const T plus = (detail::norm_along(x, y, step, space) - nx) / step;
    const T minus = (detail::norm_along(x, y, T(-step), space) - nx) / T(-step);
    return {plus, minus, T(0)};
  }

  if constexpr (is_exact_v<T>) {
    throw backend_error("one-sided derivatives in " + space.describe() +
                        " are not exact; use float mode");
  } else {
    if (space.is_lp()) return detail::tau_smooth_lp(x, y, space);
    double step_plus = 0.0;
    double step_minus = 0.0;
    const double plus = detail::one_sided_oracle(x, y, space, 1.0, step_plus);
    const double minus = detail::one_sided_oracle(x, y, space, -1.0, step_minus);
    return {plus, minus, std::max(step_plus, step_minus)};
  }
}

/// g(x, y) = 1/2 ||x|| (tau_+(x, y) + tau_-(x, y)), the definitional route.
/// g(0, y) = 0 by convention.
template <Scalar T>
T g_general(const SparseVector<T>& x, const SparseVector<T>& y, const SpaceSpec<T>& space) {
  if (x.is_zero()) return T(0);
  const TauPair<T> t = tau(x, y, space);
  return norm(x, space) * (t.tau_plus + t.tau_minus) / T(2);
}

/// The closed form on l^p:
///   g(x, y) = ||x||_p^(2-p) sum_k |xi_k|^(p-1) sgn(xi_k) eta_k.
/// Exact in rational mode for p in {1, 2}. g(0, y) = 0.
template <Scalar T>
T g_lp(const SparseVector<T>& x, const SparseVector<T>& y, double p) {
  if (!std::isfinite(p) || p < 1.0)
    throw input_error("l^p exponent must satisfy 1 <= p < inf, got " + to_decimal_string(p));
  if (x.is_zero()) return T(0);

  // Only the common support contributes.
  const auto paired_sum = [&](auto weight) {
    T s(0);
    auto a = x.begin();
    auto b = y.begin();
    while (a != x.end() && b != y.end()) {
      if (a->first < b->first) {
        ++a;
      } else if (b->first < a->first) {
        ++b;
      } else {
        s += weight(a->second) * b->second;
        ++a;
        ++b;
      }
    }
    return s;
  };

  if (p == 2.0) return paired_sum([](const T& xi) { return xi; });
  if (p == 1.0) return detail::sum_abs(x) * paired_sum([](const T& xi) { return sgn(xi); });
  if constexpr (is_exact_v<T>) {
    throw backend_error("g on l^" + to_decimal_string(p) + " is not exact; use float mode");
  } else {
    const double nx = norm(x, SpaceSpec<double>::lp(p));
    const double s =
        paired_sum([p](double xi) { return std::pow(std::abs(xi), p - 1.0) * sgn(xi); });
    return std::pow(nx, 2.0 - p) * s;
  }
}

/// g for whatever space this is: closed form on l^p, definitional route
/// for oracle norms.
template <Scalar T>
T g(const SparseVector<T>& x, const SparseVector<T>& y, const SpaceSpec<T>& space) {
  if (space.is_lp()) return g_lp(x, y, space.p());
  return g_general(x, y, space);
}

}  // namespace gangle
