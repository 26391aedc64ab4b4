#pragma once

#include <vector>

#include "qtsp/arc.hpp"
#include "qtsp/rational.hpp"
#include "qtsp/tour.hpp"

namespace qtsp {

/// Dense n-by-n cost matrix for single arcs, 1-based indices.  Diagonal
/// entries can be stored but carry no meaning; evaluators skip them.
class LinearCostMatrix {
 public:
  explicit LinearCostMatrix(int n);

  int nodes() const { return n_; }

  const Rational& at(int i, int j) const { return cells_[idx(i, j)]; }
  const Rational& at(Arc a) const { return at(a.from, a.to); }
  void set(int i, int j, Rational v) { cells_[idx(i, j)] = std::move(v); }
  void set(Arc a, Rational v) { set(a.from, a.to, std::move(v)); }

  bool operator==(const LinearCostMatrix& o) const;

 private:
  int idx(int i, int j) const;

  int n_;
  std::vector<Rational> cells_;
};

/// Sum of arc costs along the tour.
Rational tour_cost_linear(const LinearCostMatrix& c, const Tour& t);

/// Cellwise combinations (diagonals combine too, but stay meaningless).
LinearCostMatrix operator+(const LinearCostMatrix& x, const LinearCostMatrix& y);
LinearCostMatrix operator-(const LinearCostMatrix& x, const LinearCostMatrix& y);
LinearCostMatrix operator*(const Rational& s, const LinearCostMatrix& x);

}  // namespace qtsp
