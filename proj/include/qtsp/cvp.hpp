#pragma once

#include <optional>
#include <vector>

#include "qtsp/arc.hpp"
#include "qtsp/linear_matrix.hpp"
#include "qtsp/rational.hpp"

namespace qtsp {

/// Witness that every off-diagonal cell splits as m[i][j] = a[i] + b[j].
/// Every tour then costs the same: constant = sum_i (a[i] + b[i]).
struct WeakSumCertificate {
  std::vector<Rational> a;  // 1-based; index 0 unused
  std::vector<Rational> b;
  Rational constant;
};

/// Witness that every tour through arc (k,l) has the same cost: the cells
/// such a tour can use besides (k,l) split as m[i][j] = a[i] + b[j].
/// constant = m[k][l] + sum_{i != k} a[i] + sum_{j != l} b[j].
struct KlCvpCertificate {
  int k = 0, l = 0;
  std::vector<Rational> a;  // 1-based; a[k] unused and left zero
  std::vector<Rational> b;  // b[l] unused and left zero
  Rational constant;
};

/// Deterministic weak-sum decomposition in the gauge a[1] = 0, or empty when
/// none exists.  Pins b[j] = m[1][j] (j != 1), a[i] = m[i][2] - b[2]
/// (i not in {1,2}), a[2] = m[2][3] - b[3], b[1] = m[2][1] - a[2], then
/// verifies every off-diagonal cell.  Needs at least 3 nodes.
std::optional<WeakSumCertificate> weak_sum_decompose(const LinearCostMatrix& m);

/// The common cost of all tours, when it exists (equivalently, when m is a
/// weak sum matrix).
std::optional<Rational> cvp_constant(const LinearCostMatrix& m);

/// True iff every tour of m costs exactly zero.
bool has_zero_cvp(const LinearCostMatrix& m);

/// Decomposition certifying that all tours through (k,l) share one cost.
/// The constrained cells are i != j, i != k, j != l, (i,j) != (l,k); the
/// reversed arc (l,k) is excluded because no tour can use both it and (k,l).
/// The constraint graph may be disconnected (always at m = 3), so each
/// connected component is anchored deterministically before propagation.
std::optional<KlCvpCertificate> kl_cvp_decompose(const LinearCostMatrix& m,
                                                 int k, int l);

/// The common value of sum over tour arcs of m, taken over tours containing
/// both x and y, when that value is tour-independent; empty otherwise.
/// x and y must be able to share a tour (cotour-compatible).  Decided by
/// direct enumeration up to 4 nodes and by contracting both arcs and testing
/// the full constant-value property on the contracted matrix above that.
std::optional<Rational> pair_tour_constant(const LinearCostMatrix& m, Arc x,
                                           Arc y);

}  // namespace qtsp
