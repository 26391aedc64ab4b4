#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qtsp/arc.hpp"
#include "qtsp/linear_matrix.hpp"
#include "qtsp/quadratic_matrix.hpp"
#include "qtsp/rational.hpp"

namespace qtsp {

/// Row (owner) of qbar reshaped into a node-by-node matrix; the owner's own
/// cell is zeroed.  Entry (u,v) is qbar[(owner),(u,v)].
LinearCostMatrix z_matrix(const QuadraticCostMatrix& qbar, Arc owner);

/// True iff some tour of the m-node complete digraph uses both arcs:
/// distinct arcs that share no tail, share no head, and are not mutual
/// reversals.
bool cotour_adjacent(Arc a, Arc b, int m);

/// The complete digraph's arcs restricted to m nodes, with the submatrix of
/// q on those arcs.
QuadraticCostMatrix principal_submatrix(const QuadraticCostMatrix& q);

/// BFS spanning forest of the graph whose vertices are arcs and whose edges
/// join arcs that can share a tour.  A single tree for m >= 4; exactly two
/// trees at m = 3, where the arc sets of the two triangle tours cannot reach
/// each other.  Roots are the lowest dense-index arc of each component;
/// neighbors expand in dense-index order, so the structure is deterministic.
struct ArcCotourForest {
  int m = 0;
  std::vector<Arc> order;      // BFS visit order, all components
  std::vector<int> parent;     // by dense arc index; -1 at roots
  std::vector<int> component;  // by dense arc index, 0-based
  int components = 0;
};
ArcCotourForest build_arc_cotour_forest(int m);

/// The common value of (Z^a - Z^b) over tours containing both arcs, when
/// one exists.  Empty output is a non-linearizability witness: any
/// linearization would force this difference to be (f_a - f_b)/2 on every
/// such tour.
std::optional<Rational> eta_for_pair(const QuadraticCostMatrix& qbar, Arc a,
                                     Arc b);

/// f values (dense-indexed, gauge f = 0 at each root) obtained by walking
/// the forest: child = parent + 2 * eta(child, parent).  On failure carries
/// the first edge, in BFS order, without a pair constant.
struct FTildeSolve {
  std::optional<std::vector<Rational>> f;
  std::optional<std::pair<Arc, Arc>> failing_pair;  // (child, parent)
};
FTildeSolve solve_f_tilde(const ArcCotourForest& forest,
                          const QuadraticCostMatrix& qbar, int threads = 1);

/// Shifts each forest component of f-tilde by its own constant so that the
/// resulting F satisfies qbar[t] = ((m-1)/(m-2)) * F(t) on that component's
/// reference tour (1 -> 2 -> ... -> m -> 1, or the two triangle tours at
/// m = 3).  The shift leaves all within-component differences intact.
LinearCostMatrix normalize_lambda(const QuadraticCostMatrix& qbar,
                                  const ArcCotourForest& forest,
                                  const std::vector<Rational>& f_tilde);

enum class WitnessKind {
  /// A spanning-forest edge whose Z-difference matrix takes two different
  /// values on tours through both arcs.
  PairConstantMismatch,
  /// The recursive linearization H of the principal submatrix differs from
  /// ((n-2)/(n-3)) * F somewhere: H minus that matrix has no zero-constant
  /// tour value.
  ResidualNotZeroCvp,
  /// An arc a whose completion matrix 2*Z^a - F/(n-3) fails the arc-owned
  /// constant-value property with constant f_a, so no zero-bordered
  /// linearization can extend F across arc a.
  ArcConsistencyMismatch,
};

const char* witness_kind_name(WitnessKind k);

/// Machine-checkable evidence for a negative verdict.  level is the node
/// count of the subproblem whose check failed; the carried matrices let a
/// brute-force re-check replay the exact failed test at desk scale.
struct NonLinearizableWitness {
  WitnessKind kind;
  int level = 0;
  std::optional<std::pair<Arc, Arc>> pair;         // failed forest edge
  std::optional<Arc> arc;                          // failed completion arc
  std::optional<QuadraticCostMatrix> level_matrix; // the level's submatrix
  std::optional<LinearCostMatrix> check_matrix;    // difference or completion matrix
  std::optional<Rational> expected_constant;       // required completion value
};

struct LinearizeStats {
  double normalize_seconds = 0;
  double fast_path_seconds = 0;
  double reduce_seconds = 0;
  double condition1_seconds = 0;
  double recursion_seconds = 0;
  double completion_seconds = 0;
  double verify_seconds = 0;
  double total_seconds = 0;
  int recursion_depth = 0;
  long eta_evaluations = 0;
  long verified_tours = 0;
  long cleared_null_cells = 0;
  bool fast_path_used = false;
};

struct LinearizationOutcome {
  bool linearizable = false;
  std::optional<LinearCostMatrix> linearization;
  std::optional<NonLinearizableWitness> witness;
  LinearizeStats stats;
};

enum class VerifyMode {
  Auto,        // exhaustive when small enough, sampled otherwise
  Exhaustive,  // every tour; refuses oversized instances
  Sample,      // seeded pseudo-random sample of tours
  Off,
};

struct LinearizeOptions {
  bool fast_path = false;
  bool strict_nulls = false;
  VerifyMode verify = VerifyMode::Auto;
  long sample_size = 1000;
  unsigned long long sample_seed = 0x51d0f1;
  int threads = 1;  // see ExecPolicy
  int exhaustive_cap = 9;
};

/// Full decision procedure: clear structural zeros, reduce, and run the
/// characterization checks with recursion on the principal submatrix.  A
/// positive outcome carries a linearization (verified per options.verify);
/// a negative one carries a witness.
LinearizationOutcome linearize(const QuadraticCostMatrix& q,
                               const LinearizeOptions& opt = {});

/// Decision procedure for a matrix already in quadratic reduced form (the
/// caller's contract; violations throw).  Performs no final verification.
LinearizationOutcome linearize_reduced(const QuadraticCostMatrix& qr,
                                       const LinearizeOptions& opt = {});

/// n = 3 construction: the two tours share no arcs, so put each tour's full
/// cost on one arc: c[1][2] = Q[1->2->3->1], c[1][3] = Q[1->3->2->1].
LinearCostMatrix base_case_linearize(const QuadraticCostMatrix& q);

/// Gauge shift that zeroes row and column n off-diagonal while preserving
/// every tour value.
LinearCostMatrix zero_border_normalize(const LinearCostMatrix& c);

/// Cheap sufficient test: if every row of q, reshaped to a matrix, has the
/// constant-value property owned by its row arc, the constants themselves
/// form a linearization, returned here.  Empty means inconclusive, not a
/// negative verdict.
std::optional<LinearCostMatrix> sufficient_row_cvp(const QuadraticCostMatrix& q);

}  // namespace qtsp
