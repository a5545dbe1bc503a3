#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gangle/errors.hpp"
#include "gangle/scalar.hpp"

namespace gangle {

/// Coordinate index. Coordinates are numbered from 1.
using Index = std::size_t;

/// A finitely supported real sequence.
///
/// Entries are kept sorted by index with no stored zeros, so two vectors
/// are equal iff their entry lists are equal.
template <Scalar T>
class SparseVector {
 public:
  using value_type = T;
  using Entry = std::pair<Index, T>;

  SparseVector() = default;

  /// Dense coordinates: the first element is coordinate 1.
  SparseVector(std::initializer_list<T> dense)
      : SparseVector(from_dense(std::span<const T>(dense.begin(), dense.size()))) {}

  static SparseVector from_dense(std::span<const T> dense) {
    SparseVector v;
    for (std::size_t i = 0; i < dense.size(); ++i) {
      if (dense[i] != 0) v.entries_.emplace_back(i + 1, dense[i]);
    }
    return v;
  }

  /// Index/value pairs in any order. Zero values are dropped; index 0 and
  /// repeated indices are rejected.
  static SparseVector from_entries(std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    SparseVector v;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (entries[i].first == 0)
        throw input_error("coordinate indices start at 1");
      if (i > 0 && entries[i].first == entries[i - 1].first)
        throw input_error("repeated coordinate index " +
                          std::to_string(entries[i].first));
      if (entries[i].second != 0) v.entries_.push_back(std::move(entries[i]));
    }
    return v;
  }

  /// The standard basis vector e_i.
  static SparseVector unit(Index i) {
    if (i == 0) throw input_error("coordinate indices start at 1");
    SparseVector v;
    v.entries_.emplace_back(i, T(1));
    return v;
  }

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  bool is_zero() const noexcept { return entries_.empty(); }
  std::size_t nnz() const noexcept { return entries_.size(); }

  /// Largest index in the support, 0 for the zero vector.
  Index max_index() const noexcept {
    return entries_.empty() ? 0 : entries_.back().first;
  }

  std::vector<Index> support() const {
    std::vector<Index> s;
    s.reserve(entries_.size());
    for (const auto& [i, _] : entries_) s.push_back(i);
    return s;
  }

  /// Coefficient at index i (zero outside the support).
  T operator[](Index i) const {
    const auto it = std::lower_bound(
        entries_.begin(), entries_.end(), i,
        [](const Entry& e, Index key) { return e.first < key; });
    if (it != entries_.end() && it->first == i) return it->second;
    return T(0);
  }

  /// Coordinates 1..n as a dense array.
  std::vector<T> to_dense(std::size_t n) const {
    std::vector<T> d(n, T(0));
    for (const auto& [i, x] : entries_) {
      if (i <= n) d[i - 1] = x;
    }
    return d;
  }

  friend bool operator==(const SparseVector&, const SparseVector&) = default;

 private:
  std::vector<Entry> entries_;

  template <Scalar U, class Op>
  friend SparseVector<U> merge(const SparseVector<U>&, const SparseVector<U>&, Op);
  template <Scalar U>
  friend SparseVector<U> scale(const U&, const SparseVector<U>&);
};

template <Scalar T, class Op>
SparseVector<T> merge(const SparseVector<T>& x, const SparseVector<T>& y, Op op) {
  SparseVector<T> out;
  auto& e = out.entries_;
  e.reserve(x.nnz() + y.nnz());
  auto a = x.entries_.begin();
  auto b = y.entries_.begin();
  const T zero(0);
  while (a != x.entries_.end() || b != y.entries_.end()) {
    Index i;
    T v;
    if (b == y.entries_.end() || (a != x.entries_.end() && a->first < b->first)) {
      i = a->first;
      v = op(a->second, zero);
      ++a;
    } else if (a == x.entries_.end() || b->first < a->first) {
      i = b->first;
      v = op(zero, b->second);
      ++b;
    } else {
      i = a->first;
      v = op(a->second, b->second);
      ++a;
      ++b;
    }
    if (v != 0) e.emplace_back(i, std::move(v));
  }
  return out;
}

template <Scalar T>
SparseVector<T> add(const SparseVector<T>& x, const SparseVector<T>& y) {
  return merge(x, y, [](const T& a, const T& b) { return T(a + b); });
}

template <Scalar T>
SparseVector<T> subtract(const SparseVector<T>& x, const SparseVector<T>& y) {
  return merge(x, y, [](const T& a, const T& b) { return T(a - b); });
}

template <Scalar T>
SparseVector<T> scale(const T& a, const SparseVector<T>& x) {
  SparseVector<T> out;
  if (a == 0) return out;
  out.entries_.reserve(x.nnz());
  for (const auto& [i, v] : x.entries_) {
    T w = a * v;
    // Float underflow can produce zeros; keep the invariant.
    if (w != 0) out.entries_.emplace_back(i, std::move(w));
  }
  return out;
}

/// sum_k coeffs[k] * vectors[k]
template <Scalar T>
SparseVector<T> linear_combination(const std::vector<T>& coeffs,
                                   const std::vector<SparseVector<T>>& vectors) {
  if (coeffs.size() != vectors.size())
    throw input_error("linear_combination: size mismatch");
  SparseVector<T> acc;
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    acc = add(acc, scale(coeffs[k], vectors[k]));
  return acc;
}

template <Scalar T>
SparseVector<T> operator+(const SparseVector<T>& x, const SparseVector<T>& y) {
  return add(x, y);
}

template <Scalar T>
SparseVector<T> operator-(const SparseVector<T>& x, const SparseVector<T>& y) {
  return subtract(x, y);
}

template <Scalar T>
SparseVector<T> operator-(const SparseVector<T>& x) {
  return scale(T(-1), x);
}

template <Scalar T>
SparseVector<T> operator*(const T& a, const SparseVector<T>& x) {
  return scale(a, x);
}

/// Union of the supports of several vectors, sorted.
template <Scalar T>
std::vector<Index> joint_support(const std::vector<SparseVector<T>>& vectors) {
  std::vector<Index> s;
  for (const auto& v : vectors)
    for (const auto& [i, _] : v) s.push_back(i);
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

inline SparseVector<double> to_float(const SparseVector<double>& x) { return x; }

inline SparseVector<double> to_float(const SparseVector<Rational>& x) {
  std::vector<SparseVector<double>::Entry> e;
  e.reserve(x.nnz());
  for (const auto& [i, v] : x) e.emplace_back(i, to_double(v));
  return SparseVector<double>::from_entries(std::move(e));
}

/// Dense rendering "(1, 2, 1)" up to the last nonzero coordinate.
template <Scalar T>
std::string to_string(const SparseVector<T>& x) {
  std::string s = "(";
  for (Index i = 1; i <= x.max_index(); ++i) {
    if (i > 1) s += ", ";
    s += to_display_string(x[i]);
  }
  return s + ")";
}

template <Scalar T>
std::ostream& operator<<(std::ostream& os, const SparseVector<T>& x) {
  return os << to_string(x);
}

}  // namespace gangle
