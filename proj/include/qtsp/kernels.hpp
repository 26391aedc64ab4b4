#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "qtsp/arc.hpp"
#include "qtsp/linear_matrix.hpp"
#include "qtsp/quadratic_matrix.hpp"
#include "qtsp/rational.hpp"
#include "qtsp/tour.hpp"

namespace qtsp {

/// How batch kernels run: 1 = the serial reference implementation,
/// 0 = one thread per available core, k > 1 = exactly k threads.
/// Serial and threaded runs produce identical output: arithmetic is exact,
/// every work item writes its own slot, and nothing is accumulated across
/// items, so scheduling cannot change results.
struct ExecPolicy {
  int threads = 1;
};

int resolved_thread_count(const ExecPolicy& exec);
bool openmp_enabled();

/// Quadratic cost of each tour.
std::vector<Rational> quad_tour_costs(const QuadraticCostMatrix& q,
                                      const std::vector<Tour>& tours,
                                      const ExecPolicy& exec);

/// Linear cost of each tour.
std::vector<Rational> lin_tour_costs(const LinearCostMatrix& c,
                                     const std::vector<Tour>& tours,
                                     const ExecPolicy& exec);

/// One eta value (or empty on failure) per (child, parent) forest edge,
/// in the given order.
std::vector<std::optional<Rational>> tree_edge_etas(
    const QuadraticCostMatrix& qbar,
    const std::vector<std::pair<Arc, Arc>>& edges, const ExecPolicy& exec);

/// For each arc a of the complete digraph on qbar's nodes, in dense-index
/// order: whether 2*Z^a - rho*F has the arc-owned constant-value property
/// with constant f_dense[dense(a)].  1 = pass, 0 = fail.
std::vector<uint8_t> arc_consistency_scan(const QuadraticCostMatrix& qbar,
                                          const LinearCostMatrix& f,
                                          const std::vector<Rational>& f_dense,
                                          const Rational& rho,
                                          const ExecPolicy& exec);

/// The node-n-shifted quadratic matrix used by the reduction: every cell
/// touching node n vanishes and each remaining cell is the nine-term signed
/// combination of q entries.  Parallel over row arcs; rows merge in a fixed
/// order.
QuadraticCostMatrix reduction_shift(const QuadraticCostMatrix& q,
                                    const ExecPolicy& exec);

}  // namespace qtsp
