#pragma once

#include <array>
#include <charconv>
#include <concepts>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "gangle/errors.hpp"

namespace gangle {

using BigInt = boost::multiprecision::cpp_int;

// Expression templates off: values are stored and passed around freely and
// `auto` must never bind to an unevaluated expression.
using Rational = boost::multiprecision::number<
    boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;

/// The two scalar backends. Mixing them in a single computation does not
/// compile; conversion is explicit through to_double / to_float().
template <class T>
concept Scalar = std::same_as<T, double> || std::same_as<T, Rational>;

template <Scalar T>
inline constexpr bool is_exact_v = std::same_as<T, Rational>;

template <Scalar T>
T sgn(const T& t) {
  if (t > 0) return T(1);
  if (t < 0) return T(-1);
  return T(0);
}

template <Scalar T>
T abs_value(const T& t) {
  return t < 0 ? T(-t) : t;
}

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.convert_to<double>(); }

/// Square root of a nonnegative rational when it is itself rational.
inline std::optional<Rational> exact_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  const BigInt rn = boost::multiprecision::sqrt(num);
  const BigInt rd = boost::multiprecision::sqrt(den);
  if (rn * rn != num || rd * rd != den) return std::nullopt;
  return Rational(rn, rd);
}

namespace detail {

inline BigInt parse_integer(std::string_view s) {
  if (s.empty()) throw input_error("empty integer");
  std::size_t i = 0;
  bool negative = false;
  if (s[0] == '+' || s[0] == '-') {
    negative = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) throw input_error("bad integer '" + std::string(s) + "'");
  BigInt v = 0;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9')
      throw input_error("bad integer '" + std::string(s) + "'");
    v = v * 10 + (s[i] - '0');
  }
  return negative ? BigInt(-v) : v;
}

inline BigInt pow10(unsigned n) {
  BigInt r = 1;
  for (unsigned i = 0; i < n; ++i) r *= 10;
  return r;
}

}  // namespace detail

/// Parses "a/b", an integer, or a finite decimal such as "-1.25e-3".
inline Rational parse_rational(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (s.empty()) throw input_error("empty number");

  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const BigInt num = detail::parse_integer(s.substr(0, slash));
    const BigInt den = detail::parse_integer(s.substr(slash + 1));
    if (den == 0)
      throw input_error("zero denominator in '" + std::string(s) + "'");
    return Rational(num, den);
  }

  long exponent = 0;
  std::string_view mantissa = s;
  if (const auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = s.substr(0, e);
    const std::string_view exp_text = s.substr(e + 1);
    const auto* first = exp_text.data();
    const auto* last = first + exp_text.size();
    if (!exp_text.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, exponent);
    if (ec != std::errc() || ptr != last || exp_text.empty())
      throw input_error("bad exponent in '" + std::string(s) + "'");
  }

  std::string digits;
  long frac_digits = 0;
  bool seen_point = false;
  for (std::size_t i = 0; i < mantissa.size(); ++i) {
    const char c = mantissa[i];
    if (c == '.') {
      if (seen_point) throw input_error("bad number '" + std::string(s) + "'");
      seen_point = true;
    } else if ((c == '-' || c == '+') && i == 0) {
      digits.push_back(c);
    } else if (c >= '0' && c <= '9') {
      digits.push_back(c);
      if (seen_point) ++frac_digits;
    } else {
      throw input_error("bad number '" + std::string(s) + "'");
    }
  }
  if (digits.empty() || digits == "-" || digits == "+")
    throw input_error("bad number '" + std::string(s) + "'");

  const long shift = exponent - frac_digits;
  if (shift > 4096 || shift < -4096)
    throw input_error("exponent out of range in '" + std::string(s) + "'");
  Rational value(detail::parse_integer(digits));
  if (shift >= 0) {
    value *= Rational(detail::pow10(static_cast<unsigned>(shift)));
  } else {
    value /= Rational(detail::pow10(static_cast<unsigned>(-shift)));
  }
  return value;
}

/// Exact rational equal to the shortest decimal that round-trips `x`
/// (so 0.1 becomes 1/10, not the binary expansion of the double).
inline Rational rational_from_double(double x) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc()) throw input_error("cannot format number");
  const std::string_view text(buf.data(), static_cast<std::size_t>(ptr - buf.data()));
  if (text.find_first_of("ni") != std::string_view::npos)
    throw input_error("non-finite number");
  return parse_rational(text);
}

/// "n/d", or "n" when the denominator is 1.
inline std::string to_fraction_string(const Rational& q) {
  const BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return boost::multiprecision::numerator(q).str();
  return boost::multiprecision::numerator(q).str() + "/" + den.str();
}

/// Fixed 12 significant digits.
inline std::string to_decimal_string(double x) {
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "%.12g", x);
  std::string s(buf.data());
  if (s == "-0") s = "0";
  return s;
}

template <Scalar T>
std::string to_display_string(const T& x) {
  if constexpr (is_exact_v<T>) {
    return to_fraction_string(x);
  } else {
    return to_decimal_string(x);
  }
}

}  // namespace gangle
