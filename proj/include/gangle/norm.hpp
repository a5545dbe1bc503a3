#pragma once

#include <cmath>
#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "gangle/errors.hpp"
#include "gangle/scalar.hpp"
#include "gangle/space.hpp"
#include "gangle/sparse_vector.hpp"

namespace gangle {

namespace detail {

template <Scalar T>
T sum_abs(const SparseVector<T>& x) {
  T s(0);
  for (const auto& [_, v] : x) s += abs_value(v);
  return s;
}

template <Scalar T>
T sum_squares(const SparseVector<T>& x) {
  T s(0);
  for (const auto& [_, v] : x) s += v * v;
  return s;
}

inline void require_exact_exponent(const SpaceSpec<Rational>& space, const char* what) {
  if (!space.has_rational_exponent())
    throw backend_error(std::string(what) + " in " + space.describe() +
                        " is not rational in general; use float mode");
}

}  // namespace detail

/// ||x||. In rational mode p = 2 succeeds only when the sum of squares is
/// a rational square; otherwise a backend_error points at norm_sq or float
/// mode.
template <Scalar T>
T norm(const SparseVector<T>& x, const SpaceSpec<T>& space) {
  if (!space.is_lp()) {
    const T n = space.oracle().norm(x);
    if (n < 0) throw input_error("norm oracle '" + space.oracle().name + "' returned a negative value");
    return n;
  }
  const double p = space.p();
  if (p == 1.0) return detail::sum_abs(x);
  if constexpr (is_exact_v<T>) {
    detail::require_exact_exponent(space, "the norm");
    const Rational sq = detail::sum_squares(x);
    if (auto r = exact_sqrt(sq)) return *r;
    throw backend_error("||x||_2 = sqrt(" + to_fraction_string(sq) +
                        ") is irrational; use norm_sq or float mode");
  } else {
    if (p == 2.0) return std::sqrt(detail::sum_squares(x));
    double s = 0.0;
    for (const auto& [_, v] : x) s += std::pow(std::abs(v), p);
    return std::pow(s, 1.0 / p);
  }
}

/// ||x||^2. Exact in rational mode for p in {1, 2} regardless of whether
/// ||x|| itself is rational.
template <Scalar T>
T norm_sq(const SparseVector<T>& x, const SpaceSpec<T>& space) {
  if (space.is_lp()) {
    const double p = space.p();
    if (p == 2.0) return detail::sum_squares(x);
    if (p == 1.0) {
      const T s = detail::sum_abs(x);
      return s * s;
    }
    if constexpr (is_exact_v<T>) {
      detail::require_exact_exponent(space, "the norm");
    } else {
      const double n = norm(x, space);
      return n * n;
    }
  }
  const T n = space.oracle().norm(x);
  return n * n;
}

/// Result of a randomized check of the norm axioms on a space.
struct AxiomReport {
  std::size_t trials = 0;
  std::vector<std::string> violations;
  bool ok() const noexcept { return violations.empty(); }
};

/// Samples random vectors on coordinates 1..dim and checks positivity,
/// definiteness, absolute homogeneity and the triangle inequality up to a
/// relative tolerance. A clean report is evidence, not proof.
inline AxiomReport check_norm_axioms(const SpaceSpec<double>& space, std::mt19937_64& rng,
                                     std::size_t trials = 200, std::size_t dim = 6,
                                     double rel_tol = 1e-12) {
  AxiomReport report;
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  std::bernoulli_distribution keep(0.7);
  const auto sample = [&] {
    std::vector<double> d(dim);
    for (auto& v : d) v = keep(rng) ? coord(rng) : 0.0;
    return SparseVector<double>::from_dense(d);
  };
  const auto fail = [&](const std::string& msg) {
    if (report.violations.size() < 16) report.violations.push_back(msg);
  };

  if (norm(SparseVector<double>{}, space) != 0.0) fail("norm of the zero vector is nonzero");
  for (std::size_t t = 0; t < trials; ++t, ++report.trials) {
    const auto x = sample();
    const auto y = sample();
    const double a = coord(rng);
    const double nx = norm(x, space);
    const double ny = norm(y, space);
    const double scale = std::max({nx, ny, 1e-300});
    if (nx < 0.0) fail("negative norm at " + to_string(x));
    if (!x.is_zero() && nx == 0.0) fail("nonzero vector of norm 0: " + to_string(x));
    if (std::abs(norm(gangle::scale(a, x), space) - std::abs(a) * nx) > rel_tol * std::abs(a) * scale * 10)
      fail("homogeneity fails at " + to_string(x));
    if (norm(add(x, y), space) > nx + ny + rel_tol * scale * 10)
      fail("triangle inequality fails at " + to_string(x) + ", " + to_string(y));
  }
  return report;
}

}  // namespace gangle
