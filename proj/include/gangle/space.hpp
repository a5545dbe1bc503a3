#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <variant>

#include "gangle/errors.hpp"
#include "gangle/scalar.hpp"
#include "gangle/sparse_vector.hpp"

namespace gangle {

/// The l^p norm, 1 <= p < infinity.
struct LpExponent {
  double p;
};

/// A black-box norm. Nothing about it is assumed; see check_norm_axioms.
template <Scalar T>
struct NormOracle {
  std::string name;
  std::function<T(const SparseVector<T>&)> norm;
};

/// The ambient normed space.
template <Scalar T>
class SpaceSpec {
 public:
  static SpaceSpec lp(double p) {
    if (!std::isfinite(p) || p < 1.0)
      throw input_error("l^p exponent must satisfy 1 <= p < inf, got " +
                        to_decimal_string(p));
    return SpaceSpec(LpExponent{p});
  }

  static SpaceSpec oracle(std::string name, std::function<T(const SparseVector<T>&)> norm) {
    if (!norm) throw input_error("norm oracle '" + name + "' is empty");
    return SpaceSpec(NormOracle<T>{std::move(name), std::move(norm)});
  }

  bool is_lp() const noexcept { return std::holds_alternative<LpExponent>(kind_); }

  double p() const {
    if (!is_lp()) throw input_error("space '" + describe() + "' is not an l^p space");
    return std::get<LpExponent>(kind_).p;
  }

  /// p in {1, 2}: the only exponents the exact backend supports.
  bool has_rational_exponent() const noexcept {
    return is_lp() && (std::get<LpExponent>(kind_).p == 1.0 ||
                       std::get<LpExponent>(kind_).p == 2.0);
  }

  const NormOracle<T>& oracle() const {
    if (is_lp()) throw input_error("space '" + describe() + "' is not an oracle space");
    return std::get<NormOracle<T>>(kind_);
  }

  std::string describe() const {
    if (is_lp()) return "l^" + to_decimal_string(std::get<LpExponent>(kind_).p);
    return "oracle:" + std::get<NormOracle<T>>(kind_).name;
  }

 private:
  explicit SpaceSpec(std::variant<LpExponent, NormOracle<T>> kind) : kind_(std::move(kind)) {}

  std::variant<LpExponent, NormOracle<T>> kind_;
};

/// Demo norms addressable by name from problem files: l1, l2, l3, linf.
/// They go through the generic definitional code path, never the l^p
/// closed forms.
inline SpaceSpec<double> builtin_oracle(const std::string& name) {
  const auto pnorm = [](double p) {
    return [p](const SparseVector<double>& x) {
      double s = 0.0;
      for (const auto& [_, v] : x) s += std::pow(std::abs(v), p);
      return std::pow(s, 1.0 / p);
    };
  };
  if (name == "l1") return SpaceSpec<double>::oracle(name, pnorm(1.0));
  if (name == "l2") return SpaceSpec<double>::oracle(name, pnorm(2.0));
  if (name == "l3") return SpaceSpec<double>::oracle(name, pnorm(3.0));
  if (name == "linf") {
    return SpaceSpec<double>::oracle(name, [](const SparseVector<double>& x) {
      double m = 0.0;
      for (const auto& [_, v] : x) m = std::max(m, std::abs(v));
      return m;
    });
  }
  throw input_error("unknown built-in norm 'oracle:" + name + "'");
}

}  // namespace gangle
