#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "qtsp/arc.hpp"
#include "qtsp/rational.hpp"
#include "qtsp/tour.hpp"

namespace qtsp {

/// One stored coefficient of a quadratic cost matrix: the cost contributed
/// when arcs (i,j) and (k,l) both appear in a tour, in that row/column order.
struct QuadEntry {
  int i, j, k, l;
  Rational v;
};

/// Sparse quadratic cost matrix over the arc pairs of a complete directed
/// graph on n nodes.  Rows and columns are arcs; the (e,f) cell is the cost
/// incurred when a tour uses both e and f.  Absent cells are zero.
class QuadraticCostMatrix {
 public:
  explicit QuadraticCostMatrix(int n);

  int nodes() const { return n_; }

  const Rational& value(int i, int j, int k, int l) const;
  const Rational& value(Arc e, Arc f) const {
    return value(e.from, e.to, f.from, f.to);
  }
  void set(int i, int j, int k, int l, Rational v);
  void set(Arc e, Arc f, Rational v) { set(e.from, e.to, f.from, f.to, std::move(v)); }
  void add(int i, int j, int k, int l, const Rational& v);
  void add(Arc e, Arc f, const Rational& v) { add(e.from, e.to, f.from, f.to, v); }

  size_t stored_entries() const { return cells_.size(); }

  /// All nonzero cells ordered by (row arc, column arc) dense index.
  std::vector<QuadEntry> entries_sorted() const;

  bool operator==(const QuadraticCostMatrix& o) const;

 private:
  uint32_t pack(int i, int j, int k, int l) const;

  int n_;
  std::unordered_map<uint32_t, Rational> cells_;
  static const Rational zero_;
};

/// Cells that can never be active together in any tour: a shared tail with
/// different heads, a shared head with different tails, or a reversed arc.
/// The diagonal (e,e) is meaningful and not structural.
inline bool structurally_null_cell(int i, int j, int k, int l) {
  return structurally_null(Arc{i, j}, Arc{k, l});
}

struct StructuralZeroViolation {
  int i, j, k, l;
  Rational v;
};

struct NormalizeResult {
  QuadraticCostMatrix q;
  std::vector<StructuralZeroViolation> cleared;
};

/// Returns a copy with every structurally null cell set to zero.  When
/// strict, a nonzero structural cell is an input error and throws; otherwise
/// the cleared cells are reported back.
NormalizeResult normalize_structural_zeros(const QuadraticCostMatrix& q,
                                           bool strict);

/// Cost of a tour under Q: sum of q over all ordered pairs of tour arcs,
/// including each arc paired with itself.
Rational tour_cost_quadratic(const QuadraticCostMatrix& q, const Tour& t);

}  // namespace qtsp
