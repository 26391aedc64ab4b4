#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qtsp {

/// Directed arc of a complete digraph, nodes numbered from 1. Tail != head.
struct Arc {
  int from = 0;
  int to = 0;

  friend auto operator<=>(const Arc&, const Arc&) = default;

  std::string str() const {
    return "(" + std::to_string(from) + "," + std::to_string(to) + ")";
  }
};

inline bool valid_arc(Arc a, int n) {
  return a.from >= 1 && a.from <= n && a.to >= 1 && a.to <= n && a.from != a.to;
}

inline void require_arc(Arc a, int n, const char* what = "arc") {
  if (!valid_arc(a, n)) {
    throw std::invalid_argument(std::string(what) + ": invalid arc " + a.str() +
                                " for n=" + std::to_string(n));
  }
}

/// Row-major position of an arc among the n(n-1) arcs, skipping the diagonal.
/// (1,2) -> 0, (1,3) -> 1, ..., (n,n-1) -> n(n-1)-1.
inline int dense_index(Arc a, int n) {
  require_arc(a, n, "dense_index");
  return (a.from - 1) * (n - 1) + (a.to - 1) - (a.to > a.from ? 1 : 0);
}

/// Inverse of dense_index.
inline Arc arc_at(int index, int n) {
  if (index < 0 || index >= n * (n - 1)) {
    throw std::invalid_argument("arc_at: index " + std::to_string(index) +
                                " out of range for n=" + std::to_string(n));
  }
  int from = index / (n - 1) + 1;
  int rem = index % (n - 1);
  int to = rem + 1 + (rem + 1 >= from ? 1 : 0);
  return Arc{from, to};
}

/// True when a pair of distinct arcs can never appear together in a tour:
/// shared tail, shared head, or one the reverse of the other.  The diagonal
/// pair (e,e) is not null.
inline bool structurally_null(Arc e, Arc f) {
  if (e.from == f.from && e.to != f.to) return true;
  if (e.from != f.from && e.to == f.to) return true;
  if (e.from == f.to && e.to == f.from) return true;
  return false;
}

/// Distinct arcs that appear together in at least one tour of a complete
/// digraph on >= 3 nodes.
inline bool cotour_compatible(Arc a, Arc b) {
  return a != b && !structurally_null(a, b);
}

}  // namespace qtsp
