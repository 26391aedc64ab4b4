#pragma once

#include "qtsp/kernels.hpp"
#include "qtsp/linear_matrix.hpp"
#include "qtsp/quadratic_matrix.hpp"

namespace qtsp {

/// Split of a quadratic cost matrix into a reduced quadratic part and a
/// linear part with Q[tour] = reduced[tour] + linear(tour) for every tour.
struct QrfDecomposition {
  QuadraticCostMatrix reduced;
  LinearCostMatrix linear;
};

/// True iff q is symmetric, has a zero diagonal, and every cell in a row or
/// column indexed by an arc touching the largest node is zero.
bool is_quadratic_reduced(const QuadraticCostMatrix& q);

/// Reduces q against its largest node in O(n^4): forms the shifted matrix
/// whose rows/columns touching node n vanish, symmetrizes it, moves its
/// diagonal into the linear part, and clears structurally null cells.
/// Expects structural zeros already cleared (they are treated as zero
/// regardless); any formula term addressing a loop arc counts as zero.
QrfDecomposition qrf_decompose(const QuadraticCostMatrix& q,
                               const ExecPolicy& exec = {});

}  // namespace qtsp
