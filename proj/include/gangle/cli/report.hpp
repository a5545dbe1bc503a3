#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gangle/matrix.hpp"
#include "gangle/scalar.hpp"
#include "gangle/sparse_vector.hpp"

namespace gangle::cli {

/// Process exit codes. Stable.
enum ExitCode : int { ok = 0, check_failed = 1, bad_input = 2, degenerate = 3 };

/// Scalars render as {"exact": "n/d", "decimal": "..."} in exact mode and
/// {"decimal": "..."} in float mode; decimals carry 12 significant digits.
template <Scalar T>
nlohmann::ordered_json scalar_json(const T& x) {
  nlohmann::ordered_json j;
  if constexpr (is_exact_v<T>) j["exact"] = to_fraction_string(x);
  j["decimal"] = to_decimal_string(to_double(x));
  return j;
}

template <Scalar T>
std::string scalar_text(const T& x) {
  if constexpr (is_exact_v<T>) {
    const std::string f = to_fraction_string(x);
    const std::string d = to_decimal_string(to_double(x));
    return f == d ? f : f + " (~" + d + ")";
  } else {
    return to_decimal_string(x);
  }
}

/// Sparse vectors as [[index, scalar], ...].
template <Scalar T>
nlohmann::ordered_json vector_json(const SparseVector<T>& v) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& [i, x] : v) j.push_back({i, scalar_json(x)});
  return j;
}

template <Scalar T>
nlohmann::ordered_json matrix_json(const Matrix<T>& m) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(scalar_json(m(r, c)));
    j.push_back(std::move(row));
  }
  return j;
}

/// Output of one command: structured values plus the text lines that
/// render them.
struct ResultReport {
  std::string command;
  std::vector<std::string> args;
  std::string mode;
  std::string space;
  nlohmann::ordered_json outputs = nlohmann::ordered_json::object();
  std::vector<std::string> lines;
  std::vector<std::string> warnings;
  std::vector<std::string> notes;
  int exit_status = ExitCode::ok;

  void line(std::string s) { lines.push_back(std::move(s)); }
  void warn(std::string s) { warnings.push_back(std::move(s)); }
  void note(std::string s) { notes.push_back(std::move(s)); }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["args"] = args;
    if (!mode.empty()) j["mode"] = mode;
    if (!space.empty()) j["space"] = space;
    j["outputs"] = outputs;
    j["warnings"] = warnings;
    j["notes"] = notes;
    j["exit_status"] = exit_status;
    return j;
  }

  void render(std::ostream& os, bool as_json) const {
    if (as_json) {
      os << to_json().dump(2) << "\n";
      return;
    }
    std::string echo = "gangle " + command;
    for (const auto& a : args) echo += " " + a;
    os << echo << "\n";
    if (!space.empty()) os << "space: " << space << ", mode: " << mode << "\n";
    for (const auto& l : lines) os << l << "\n";
    for (const auto& w : warnings) os << "WARNING: " << w << "\n";
    for (const auto& n : notes) os << "NOTE: " << n << "\n";
  }
};

}  // namespace gangle::cli
