#pragma once

#include <stdexcept>
#include <string>

namespace gangle {

/// Base of every error thrown by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-domain input (p < 1, bad index, unknown name, ...).
class input_error : public error {
 public:
  using error::error;
};

/// The exact backend was asked for a quantity it cannot represent.
class backend_error : public error {
 public:
  using error::error;
};

/// A mathematical degeneracy: zero vector where a direction is needed,
/// vanishing Gram determinant, vanishing Lambda, dependent basis.
class degenerate_error : public error {
 public:
  using error::error;
};

/// A finite-difference limit did not settle.
class estimation_error : public error {
 public:
  estimation_error(const std::string& what, double previous, double last)
      : error(what), previous_(previous), last_(last) {}

  double previous() const noexcept { return previous_; }
  double last() const noexcept { return last_; }

 private:
  double previous_;
  double last_;
};

/// A value that theory bounds (cos^2 in [0,1], Lambda^2 >= 0) came out
/// of range by more than round-off.
class property_violation : public error {
 public:
  property_violation(const std::string& what, double value)
      : error(what), value_(value) {}

  double value() const noexcept { return value_; }

 private:
  double value_;
};

}  // namespace gangle
