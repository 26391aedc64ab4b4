#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "qtsp/linear_matrix.hpp"
#include "qtsp/quadratic_matrix.hpp"
#include "qtsp/tour.hpp"

namespace qtsp {

inline constexpr int kDefaultEnumerationCap = 9;

struct TourCapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// All (n-1)! directed tours, anchored at node 1, in lexicographic order of
/// the remaining sequence.  Throws TourCapExceeded when n > cap.
std::vector<Tour> enumerate_tours(int n, int cap = kDefaultEnumerationCap);

/// Replace arc a of t with the detour a.from -> node -> a.to.  The node must
/// extend the tour's node set to a permutation of 1..order+1.
Tour tour_insert_node(const Tour& t, int node, Arc a);

struct BruteLinearization {
  std::optional<LinearCostMatrix> c;
  /// When no linear matrix exists: a tour whose cost equation contradicts
  /// the equations of the tours enumerated before it.
  std::optional<Tour> inconsistent_tour;
};

/// Exhaustive decision: solve the exact linear system that equates each
/// tour's quadratic cost with its unknown arc-cost sum.  Free variables are
/// fixed at zero, so the returned matrix is one witness among many.
BruteLinearization brute_linearize(const QuadraticCostMatrix& q,
                                   int cap = kDefaultEnumerationCap);

/// First tour, in enumeration order, where the two cost functions disagree.
std::optional<Tour> brute_verify(const QuadraticCostMatrix& q,
                                 const LinearCostMatrix& c,
                                 int cap = kDefaultEnumerationCap);

struct CvpCertificate {
  std::vector<Rational> a;  // 1-based; index 0 unused
  std::vector<Rational> b;
  /// Common tour value: sum(a)+sum(b) for the unrestricted form, and
  /// m[k][l] + sum(a) + sum(b) for the arc-owned form.
  Rational constant;
};

/// Weak-sum decomposition m[i][j] = a[i] + b[j] over every off-diagonal
/// cell, obtained by exact elimination on the full constraint system.
std::optional<CvpCertificate> brute_cvp(const LinearCostMatrix& m);

/// Weak-sum decomposition over exactly the cells that a tour through arc
/// (k,l) can read besides (k,l) itself: i != j, i != k, j != l, and
/// (i,j) != (l,k).  Unknowns a[k] and b[l] do not occur and are left zero.
std::optional<CvpCertificate> brute_kl_cvp(const LinearCostMatrix& m, int k,
                                           int l);

}  // namespace qtsp
