#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qtsp/linear_matrix.hpp"
#include "qtsp/quadratic_matrix.hpp"
#include "qtsp/rational.hpp"

namespace qtsp {

/// A seeded test instance.  When planted is present it is an exact
/// linearization of q by construction.  Instances are deterministic:
/// identical (family, n, seed, parameters) rebuild identical matrices.
struct GeneratedInstance {
  QuadraticCostMatrix q;
  std::optional<LinearCostMatrix> planted;
  std::string family;
  unsigned long long seed = 0;
};

/// Cubic array of rationals, every coordinate 1..n.
struct Tensor3 {
  explicit Tensor3(int n)
      : n(n), v(static_cast<size_t>(n) * n * n) {}
  int n;
  std::vector<Rational> v;
  Rational& at(int i, int j, int k) {
    return v[(static_cast<size_t>(i - 1) * n + (j - 1)) * n + (k - 1)];
  }
  const Rational& at(int i, int j, int k) const {
    return v[(static_cast<size_t>(i - 1) * n + (j - 1)) * n + (k - 1)];
  }
};

/// Off-diagonal integer entries drawn uniformly from [-9, 9] in row-major
/// order.
LinearCostMatrix random_linear_matrix(int n, unsigned long long seed);

/// Puts c[i][j] on the diagonal cell of arc (i,j) and zero elsewhere, so
/// every tour costs exactly c(tour); planted = c.
GeneratedInstance gen_diagonal_embedding(const LinearCostMatrix& c);

/// Diagonal embedding of a random linear matrix.
GeneratedInstance gen_diagonal(int n, unsigned long long seed);

/// q[(i,j)][(k,l)] = a[i][j][k] + b[i][j][l] + d[i][k][l] + h[j][k][l] on
/// non-null cells (null cells stay zero; no tour can read them, so the
/// planted linearization is unaffected).  Planted:
/// c[i][j] = sum_k (a[i][j][k] + b[i][j][k] + d[k][i][j] + h[k][i][j]).
GeneratedInstance tensor_sum_instance(const Tensor3& a, const Tensor3& b,
                                      const Tensor3& d, const Tensor3& h);

/// tensor_sum_instance on four random integer tensors, drawn a, b, d, h in
/// that order, each traversed row-major.  Needs n >= 4.
GeneratedInstance gen_tensor_sum(int n, unsigned long long seed);

/// Each row (i,j) gets a weak-sum pattern a[u] + b[v] on the cells a tour
/// through (i,j) can read, plus a free value at the owner cell, so every
/// row has the arc-owned constant-value property.  Planted: the row
/// constants.  Needs n >= 4.
GeneratedInstance gen_row_cvp(int n, unsigned long long seed);

/// Verdict-preserving noise on a planted instance:
///   q' = mu*q + (1-mu)*q^T + D + S
/// with random rational mu, random diagonal D, and random skew-symmetric S
/// supported on compatible off-diagonal cell pairs.  The transpose mix and
/// S never change a tour's cost; D adds its diagonal to the planted matrix.
/// Requires base.planted.
GeneratedInstance gen_equivalence_noise(const GeneratedInstance& base,
                                        unsigned long long seed);

/// Unstructured instance: each non-null cell is filled with probability
/// `density` (an exact rational in [0,1]) with an integer from [-9, 9].
/// No planted linearization.  Needs n >= 4.
GeneratedInstance gen_random(int n, unsigned long long seed,
                             const Rational& density);

/// Adds eps != 0 at both cells of one randomly chosen compatible arc pair
/// whose four endpoints all avoid the largest node.  Keeps symmetry;
/// usually breaks linearizability (never at n = 4, where every matrix is
/// linearizable).  No planted linearization.  Needs n >= 4.
GeneratedInstance perturb(const GeneratedInstance& base, const Rational& eps,
                          unsigned long long seed);

}  // namespace qtsp
