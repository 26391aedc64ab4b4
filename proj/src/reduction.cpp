#include "qtsp/reduction.hpp"

#include <stdexcept>

namespace qtsp {

bool is_quadratic_reduced(const QuadraticCostMatrix& q) {
  const int n = q.nodes();
  for (const QuadEntry& e : q.entries_sorted()) {
    if (e.i == n || e.j == n || e.k == n || e.l == n) return false;
    if (e.i == e.k && e.j == e.l) return false;  // nonzero diagonal
    if (q.value(e.k, e.l, e.i, e.j) != e.v) return false;
  }
  return true;
}

QrfDecomposition qrf_decompose(const QuadraticCostMatrix& q,
                               const ExecPolicy& exec) {
  const int n = q.nodes();
  QuadraticCostMatrix shifted = reduction_shift(q, exec);

  // Loop arcs produced by an index pattern contribute nothing.
  auto cell = [&](int a, int b, int c, int d) {
    return (a == b || c == d) ? Rational() : q.value(a, b, c, d);
  };

  LinearCostMatrix linear(n);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      Rational sum;
      for (int k = 1; k <= n - 1; ++k) {
        sum += cell(i, j, k, n) + cell(i, j, n, k) + cell(k, n, i, j) -
               cell(k, n, i, n) - cell(k, n, n, j) + cell(n, k, i, j) -
               cell(n, k, i, n) - cell(n, k, n, j);
      }
      linear.set(i, j, std::move(sum));
    }
  }

  // Symmetrize the shifted matrix, divert its diagonal into the linear
  // part, and drop structurally null cells: they never meet a tour, and
  // clearing them keeps the reduced matrix canonical.
  QuadraticCostMatrix reduced(n);
  for (const QuadEntry& e : shifted.entries_sorted()) {
    if (e.i == e.k && e.j == e.l) {
      linear.set(e.i, e.j, linear.at(e.i, e.j) + e.v);
      continue;
    }
    if (structurally_null_cell(e.i, e.j, e.k, e.l)) continue;
    const Rational& mirror = shifted.value(e.k, e.l, e.i, e.j);
    if (dense_index(Arc{e.i, e.j}, n) > dense_index(Arc{e.k, e.l}, n) &&
        !mirror.is_zero())
      continue;  // the mirror entry visits this cell pair
    Rational sym = (e.v + mirror) / Rational(2);
    reduced.set(e.i, e.j, e.k, e.l, sym);
    reduced.set(e.k, e.l, e.i, e.j, std::move(sym));
  }
  return QrfDecomposition{std::move(reduced), std::move(linear)};
}

}  // namespace qtsp
