#pragma once

// Problem files: one JSON document describing the space, the arithmetic
// mode, named vectors and named subspaces.
//
//   {
//     "p": 1,                       // or "oracle:linf" (float mode only)
//     "mode": "exact",              // or "float"
//     "vectors": {
//       "u":  [1, 2, 1],            // dense: slot 1 is coordinate 1
//       "v1": [[1, 1]],             // sparse: [index, value] pairs
//       "w":  ["1/3", "0.25", 2]    // strings: "a/b" or decimals
//     },
//     "subspaces": { "V": ["v1", "v2"] }
//   }

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gangle/errors.hpp"
#include "gangle/gram_projection.hpp"
#include "gangle/scalar.hpp"
#include "gangle/space.hpp"
#include "gangle/sparse_vector.hpp"

namespace gangle::cli {

enum class Mode { exact, floating };

/// A parsed problem file. Coordinates are held as exact rationals read
/// from the text; a float-mode problem converts them on instantiation.
struct ProblemFile {
  std::string space_text;
  std::optional<double> p;
  std::string oracle;
  Mode mode = Mode::exact;
  std::map<std::string, SparseVector<Rational>> vectors;
  std::map<std::string, std::vector<std::string>> subspaces;
};

namespace detail {

inline Rational parse_coordinate(const nlohmann::json& v, const std::string& where) {
  switch (v.type()) {
    case nlohmann::json::value_t::number_integer:
      return Rational(v.get<long long>());
    case nlohmann::json::value_t::number_unsigned:
      return Rational(BigInt(v.get<unsigned long long>()));
    case nlohmann::json::value_t::number_float:
      return rational_from_double(v.get<double>());
    case nlohmann::json::value_t::string:
      try {
        return parse_rational(v.get<std::string>());
      } catch (const input_error& e) {
        throw input_error(where + ": " + e.what());
      }
    default:
      throw input_error(where + ": coordinates must be numbers or strings");
  }
}

inline SparseVector<Rational> parse_vector(const std::string& name, const nlohmann::json& v) {
  if (!v.is_array()) throw input_error("vector '" + name + "' must be an array");
  const bool sparse = !v.empty() && std::all_of(v.begin(), v.end(), [](const nlohmann::json& e) {
    return e.is_array();
  });
  if (sparse) {
    std::vector<SparseVector<Rational>::Entry> entries;
    for (const auto& e : v) {
      if (e.size() != 2 || !e[0].is_number_integer() || e[0].get<long long>() < 1)
        throw input_error("vector '" + name + "': sparse entries are [index >= 1, value]");
      entries.emplace_back(static_cast<Index>(e[0].get<long long>()),
                           parse_coordinate(e[1], "vector '" + name + "'"));
    }
    return SparseVector<Rational>::from_entries(std::move(entries));
  }
  std::vector<Rational> dense;
  dense.reserve(v.size());
  for (const auto& e : v) dense.push_back(parse_coordinate(e, "vector '" + name + "'"));
  return SparseVector<Rational>::from_dense(dense);
}

}  // namespace detail

inline ProblemFile parse_problem(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw input_error(std::string("problem file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw input_error("problem file must be a JSON object");

  ProblemFile pf;
  if (!doc.contains("p")) throw input_error("problem file is missing \"p\"");
  const auto& p = doc["p"];
  if (p.is_number()) {
    pf.p = p.get<double>();
    pf.space_text = p.dump();
    if (!(*pf.p >= 1.0) || !std::isfinite(*pf.p)) throw input_error("\"p\" must satisfy 1 <= p < inf");
  } else if (p.is_string() && p.get<std::string>().rfind("oracle:", 0) == 0) {
    pf.oracle = p.get<std::string>().substr(7);
    pf.space_text = p.get<std::string>();
    builtin_oracle(pf.oracle);  // validates the name
  } else {
    throw input_error("\"p\" must be a number >= 1 or \"oracle:<name>\"");
  }

  const std::string mode = doc.value("mode", std::string("exact"));
  if (mode == "exact") {
    pf.mode = Mode::exact;
  } else if (mode == "float") {
    pf.mode = Mode::floating;
  } else {
    throw input_error("\"mode\" must be \"exact\" or \"float\"");
  }
  if (pf.mode == Mode::exact && !(pf.p && (*pf.p == 1.0 || *pf.p == 2.0)))
    throw input_error("exact mode requires p = 1 or p = 2; use \"mode\": \"float\"");

  if (doc.contains("vectors")) {
    if (!doc["vectors"].is_object()) throw input_error("\"vectors\" must be an object");
    for (const auto& [name, v] : doc["vectors"].items())
      pf.vectors.emplace(name, detail::parse_vector(name, v));
  }
  if (doc.contains("subspaces")) {
    if (!doc["subspaces"].is_object()) throw input_error("\"subspaces\" must be an object");
    for (const auto& [name, s] : doc["subspaces"].items()) {
      if (!s.is_array() || s.empty())
        throw input_error("subspace '" + name + "' must be a nonempty array of vector names");
      std::vector<std::string> members;
      for (const auto& m : s) {
        if (!m.is_string()) throw input_error("subspace '" + name + "' lists a non-string");
        if (!pf.vectors.count(m.get<std::string>()))
          throw input_error("subspace '" + name + "' references undefined vector '" +
                            m.get<std::string>() + "'");
        members.push_back(m.get<std::string>());
      }
      pf.subspaces.emplace(name, std::move(members));
    }
  }
  return pf;
}

inline ProblemFile load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open problem file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str());
}

/// A problem instantiated in one scalar backend.
template <Scalar T>
class Problem {
 public:
  explicit Problem(const ProblemFile& pf) : space_(make_space(pf)) {
    for (const auto& [name, v] : pf.vectors) {
      if constexpr (is_exact_v<T>) {
        vectors_.emplace(name, v);
      } else {
        vectors_.emplace(name, to_float(v));
      }
    }
    subspaces_ = pf.subspaces;
  }

  const SpaceSpec<T>& space() const noexcept { return space_; }

  const SparseVector<T>& vector(const std::string& name) const {
    const auto it = vectors_.find(name);
    if (it == vectors_.end()) throw input_error("unknown vector '" + name + "'");
    return it->second;
  }

  /// A subspace name, or a vector name standing for its span.
  Subspace<T> subspace(const std::string& name) const {
    if (const auto it = subspaces_.find(name); it != subspaces_.end()) {
      std::vector<SparseVector<T>> basis;
      for (const auto& m : it->second) basis.push_back(vector(m));
      return Subspace<T>(std::move(basis), space_);
    }
    if (vectors_.count(name)) return Subspace<T>({vector(name)}, space_);
    throw input_error("unknown subspace '" + name + "'");
  }

  std::vector<std::string> member_names(const std::string& name) const {
    if (const auto it = subspaces_.find(name); it != subspaces_.end()) return it->second;
    return {name};
  }

 private:
  static SpaceSpec<T> make_space(const ProblemFile& pf) {
    if (pf.p) return SpaceSpec<T>::lp(*pf.p);
    if constexpr (is_exact_v<T>) {
      throw input_error("oracle norms require float mode");
    } else {
      return builtin_oracle(pf.oracle);
    }
  }

  SpaceSpec<T> space_;
  std::map<std::string, SparseVector<T>> vectors_;
  std::map<std::string, std::vector<std::string>> subspaces_;
};

}  // namespace gangle::cli
