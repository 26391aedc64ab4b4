#include "qtsp/linear_matrix.hpp"

#include <stdexcept>

namespace qtsp {

LinearCostMatrix::LinearCostMatrix(int n) : n_(n) {
  if (n < 3) throw std::invalid_argument("linear cost matrix needs n >= 3");
  cells_.assign(static_cast<size_t>(n) * n, Rational());
}

int LinearCostMatrix::idx(int i, int j) const {
  if (i < 1 || i > n_ || j < 1 || j > n_)
    throw std::out_of_range("linear cost index out of range");
  return (i - 1) * n_ + (j - 1);
}

bool LinearCostMatrix::operator==(const LinearCostMatrix& o) const {
  if (n_ != o.n_) return false;
  // Diagonal cells are meaningless, so compare off-diagonal only.
  for (int i = 1; i <= n_; ++i)
    for (int j = 1; j <= n_; ++j)
      if (i != j && at(i, j) != o.at(i, j)) return false;
  return true;
}

Rational tour_cost_linear(const LinearCostMatrix& c, const Tour& t) {
  Rational total;
  for (Arc a : t.arcs()) total += c.at(a);
  return total;
}

namespace {

template <typename F>
LinearCostMatrix combine(const LinearCostMatrix& x, const LinearCostMatrix& y,
                         F op) {
  if (x.nodes() != y.nodes())
    throw std::invalid_argument("matrix sizes disagree");
  LinearCostMatrix out(x.nodes());
  for (int i = 1; i <= x.nodes(); ++i)
    for (int j = 1; j <= x.nodes(); ++j)
      out.set(i, j, op(x.at(i, j), y.at(i, j)));
  return out;
}

}  // namespace

LinearCostMatrix operator+(const LinearCostMatrix& x,
                           const LinearCostMatrix& y) {
  return combine(x, y, [](const Rational& a, const Rational& b) { return a + b; });
}

LinearCostMatrix operator-(const LinearCostMatrix& x,
                           const LinearCostMatrix& y) {
  return combine(x, y, [](const Rational& a, const Rational& b) { return a - b; });
}

LinearCostMatrix operator*(const Rational& s, const LinearCostMatrix& x) {
  LinearCostMatrix out(x.nodes());
  for (int i = 1; i <= x.nodes(); ++i)
    for (int j = 1; j <= x.nodes(); ++j) out.set(i, j, s * x.at(i, j));
  return out;
}

}  // namespace qtsp
