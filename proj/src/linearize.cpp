#include "qtsp/linearize.hpp"

#include <chrono>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "qtsp/cvp.hpp"
#include "qtsp/kernels.hpp"
#include "qtsp/oracle.hpp"
#include "qtsp/reduction.hpp"
#include "qtsp/rng.hpp"

namespace qtsp {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

const char* witness_kind_name(WitnessKind k) {
  switch (k) {
    case WitnessKind::PairConstantMismatch:
      return "pair_constant_mismatch";
    case WitnessKind::ResidualNotZeroCvp:
      return "residual_not_zero_cvp";
    case WitnessKind::ArcConsistencyMismatch:
      return "arc_consistency_mismatch";
  }
  return "unknown";
}

LinearCostMatrix z_matrix(const QuadraticCostMatrix& qbar, Arc owner) {
  const int m = qbar.nodes();
  require_arc(owner, m, "z_matrix");
  LinearCostMatrix z(m);
  for (int u = 1; u <= m; ++u) {
    for (int v = 1; v <= m; ++v) {
      if (u == v || (u == owner.from && v == owner.to)) continue;
      z.set(u, v, qbar.value(owner.from, owner.to, u, v));
    }
  }
  return z;
}

bool cotour_adjacent(Arc a, Arc b, int m) {
  require_arc(a, m, "cotour_adjacent");
  require_arc(b, m, "cotour_adjacent");
  return cotour_compatible(a, b);
}

QuadraticCostMatrix principal_submatrix(const QuadraticCostMatrix& q) {
  const int n = q.nodes();
  if (n < 4)
    throw std::invalid_argument("principal submatrix needs at least 4 nodes");
  QuadraticCostMatrix sub(n - 1);
  for (const QuadEntry& e : q.entries_sorted())
    if (e.i < n && e.j < n && e.k < n && e.l < n)
      sub.set(e.i, e.j, e.k, e.l, e.v);
  return sub;
}

ArcCotourForest build_arc_cotour_forest(int m) {
  if (m < 3) throw std::invalid_argument("arc-cotour forest needs m >= 3");
  const int arcs = m * (m - 1);
  ArcCotourForest forest;
  forest.m = m;
  forest.parent.assign(arcs, -2);  // -2 = unvisited
  forest.component.assign(arcs, -1);
  forest.order.reserve(arcs);
  for (int start = 0; start < arcs; ++start) {
    if (forest.parent[start] != -2) continue;
    forest.parent[start] = -1;
    forest.component[start] = forest.components;
    forest.order.push_back(arc_at(start, m));
    std::queue<int> frontier;
    frontier.push(start);
    while (!frontier.empty()) {
      int cur = frontier.front();
      frontier.pop();
      Arc cur_arc = arc_at(cur, m);
      for (int nb = 0; nb < arcs; ++nb) {
        if (forest.parent[nb] != -2) continue;
        if (!cotour_adjacent(arc_at(nb, m), cur_arc, m)) continue;
        forest.parent[nb] = cur;
        forest.component[nb] = forest.components;
        forest.order.push_back(arc_at(nb, m));
        frontier.push(nb);
      }
    }
    ++forest.components;
  }
  return forest;
}

std::optional<Rational> eta_for_pair(const QuadraticCostMatrix& qbar, Arc a,
                                     Arc b) {
  const int m = qbar.nodes();
  if (!cotour_adjacent(a, b, m))
    throw std::invalid_argument("arcs " + a.str() + " and " + b.str() +
                                " never share a tour");
  LinearCostMatrix p = z_matrix(qbar, a) - z_matrix(qbar, b);
  return pair_tour_constant(p, a, b);
}

FTildeSolve solve_f_tilde(const ArcCotourForest& forest,
                          const QuadraticCostMatrix& qbar, int threads) {
  if (qbar.nodes() != forest.m)
    throw std::invalid_argument("forest and matrix sizes disagree");
  const int m = forest.m;
  std::vector<std::pair<Arc, Arc>> edges;
  edges.reserve(forest.order.size());
  for (Arc a : forest.order) {
    int idx = dense_index(a, m);
    if (forest.parent[idx] >= 0)
      edges.emplace_back(a, arc_at(forest.parent[idx], m));
  }
  auto etas = tree_edge_etas(qbar, edges, ExecPolicy{threads});
  FTildeSolve out;
  std::vector<Rational> f(forest.order.size());
  size_t next_edge = 0;
  for (Arc a : forest.order) {
    int idx = dense_index(a, m);
    if (forest.parent[idx] < 0) continue;  // roots stay zero
    const auto& eta = etas[next_edge];
    if (!eta) {
      out.failing_pair = edges[next_edge];
      return out;
    }
    f[idx] = f[forest.parent[idx]] + Rational(2) * *eta;
    ++next_edge;
  }
  out.f = std::move(f);
  return out;
}

namespace {

Tour component_reference_tour(const ArcCotourForest& forest, int comp) {
  const int m = forest.m;
  if (forest.components == 1) {
    std::vector<int> seq(m);
    std::iota(seq.begin(), seq.end(), 1);
    return Tour(seq);
  }
  if (m != 3 || forest.components != 2)
    throw std::logic_error("unexpected arc-cotour component structure");
  // The two components are the arc sets of the two triangle tours; arc
  // (1,2) has dense index 0 and belongs to 1 -> 2 -> 3 -> 1.
  bool comp_of_12 = forest.component[0] == comp;
  return Tour(comp_of_12 ? std::vector<int>{1, 2, 3}
                         : std::vector<int>{1, 3, 2});
}

}  // namespace

LinearCostMatrix normalize_lambda(const QuadraticCostMatrix& qbar,
                                  const ArcCotourForest& forest,
                                  const std::vector<Rational>& f_tilde) {
  const int m = forest.m;
  const int n = m + 1;
  if (qbar.nodes() != m || f_tilde.size() != forest.parent.size())
    throw std::invalid_argument("forest, matrix, and f sizes disagree");
  LinearCostMatrix f(m);
  const Rational shrink = Rational(n - 3) / Rational(n - 2);
  for (int comp = 0; comp < forest.components; ++comp) {
    Tour ref = component_reference_tour(forest, comp);
    Rational along_ref;
    for (Arc a : ref.arcs()) {
      if (forest.component[dense_index(a, m)] != comp)
        throw std::logic_error("reference tour leaves its component");
      along_ref += f_tilde[dense_index(a, m)];
    }
    Rational lambda =
        (shrink * tour_cost_quadratic(qbar, ref) - along_ref) / Rational(m);
    for (int idx = 0; idx < m * (m - 1); ++idx)
      if (forest.component[idx] == comp)
        f.set(arc_at(idx, m), f_tilde[idx] + lambda);
  }
  return f;
}

LinearCostMatrix base_case_linearize(const QuadraticCostMatrix& q) {
  if (q.nodes() != 3)
    throw std::invalid_argument("base case construction needs exactly 3 nodes");
  LinearCostMatrix c(3);
  c.set(1, 2, tour_cost_quadratic(q, Tour({1, 2, 3})));
  c.set(1, 3, tour_cost_quadratic(q, Tour({1, 3, 2})));
  return c;
}

LinearCostMatrix zero_border_normalize(const LinearCostMatrix& c) {
  const int n = c.nodes();
  if (n < 4) throw std::invalid_argument("border normalization needs n >= 4");
  Rational alpha, beta;
  for (int i = 1; i < n; ++i) {
    alpha += c.at(i, n);
    beta += c.at(n, i);
  }
  alpha /= Rational(n - 2);
  beta /= Rational(n - 2);
  std::vector<Rational> a(n + 1), b(n + 1);
  for (int i = 1; i < n; ++i) {
    a[i] = beta - c.at(i, n);
    b[i] = alpha - c.at(n, i);
  }
  a[n] = -alpha;
  b[n] = -beta;
  LinearCostMatrix out(n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      out.set(i, j, i == j ? c.at(i, j) : c.at(i, j) + a[i] + b[j]);
  return out;
}

std::optional<LinearCostMatrix> sufficient_row_cvp(
    const QuadraticCostMatrix& q) {
  const int n = q.nodes();
  if (n < 4)
    throw std::invalid_argument("row condition needs at least 4 nodes");
  QuadraticCostMatrix clean = normalize_structural_zeros(q, false).q;
  LinearCostMatrix l(n);
  for (int idx = 0; idx < n * (n - 1); ++idx) {
    Arc owner = arc_at(idx, n);
    LinearCostMatrix row(n);
    for (int u = 1; u <= n; ++u)
      for (int v = 1; v <= n; ++v)
        if (u != v) row.set(u, v, clean.value(owner.from, owner.to, u, v));
    auto cert = kl_cvp_decompose(row, owner.from, owner.to);
    if (!cert) return std::nullopt;
    l.set(owner, cert->constant);
  }
  return l;
}

namespace {

struct PipelineCtx {
  const LinearizeOptions* opt;
  LinearizeStats* stats;
};

LinearizationOutcome accept(LinearCostMatrix c) {
  LinearizationOutcome out;
  out.linearizable = true;
  out.linearization = std::move(c);
  return out;
}

LinearizationOutcome reject(NonLinearizableWitness w) {
  LinearizationOutcome out;
  out.linearizable = false;
  out.witness = std::move(w);
  return out;
}

LinearizationOutcome run_full(const QuadraticCostMatrix& q, PipelineCtx& ctx,
                              int depth);

LinearizationOutcome run_reduced(const QuadraticCostMatrix& qr,
                                 PipelineCtx& ctx, int depth) {
  const int n = qr.nodes();
  ctx.stats->recursion_depth = std::max(ctx.stats->recursion_depth, depth);
  if (n == 3) return accept(base_case_linearize(qr));

  const int m = n - 1;
  QuadraticCostMatrix qbar = principal_submatrix(qr);
  ArcCotourForest forest = build_arc_cotour_forest(m);
  if ((m == 3 && forest.components != 2) || (m > 3 && forest.components != 1))
    throw std::logic_error("unexpected arc-cotour connectivity");

  auto t_cond1 = Clock::now();
  FTildeSolve solved = solve_f_tilde(forest, qbar, ctx.opt->threads);
  ctx.stats->eta_evaluations +=
      static_cast<long>(forest.order.size()) - forest.components;
  ctx.stats->condition1_seconds += seconds_since(t_cond1);
  if (!solved.f) {
    NonLinearizableWitness w;
    w.kind = WitnessKind::PairConstantMismatch;
    w.level = m;
    w.pair = solved.failing_pair;
    w.level_matrix = qbar;
    return reject(std::move(w));
  }
  LinearCostMatrix f = normalize_lambda(qbar, forest, *solved.f);

  auto t_rec = Clock::now();
  LinearizationOutcome sub = run_full(qbar, ctx, depth + 1);
  if (depth == 1) ctx.stats->recursion_seconds += seconds_since(t_rec);
  if (!sub.linearizable) return sub;

  auto t_check = Clock::now();
  const Rational stretch = Rational(n - 2) / Rational(n - 3);
  LinearCostMatrix residual = *sub.linearization - stretch * f;
  if (!has_zero_cvp(residual)) {
    ctx.stats->completion_seconds += seconds_since(t_check);
    NonLinearizableWitness w;
    w.kind = WitnessKind::ResidualNotZeroCvp;
    w.level = m;
    w.level_matrix = qbar;
    w.check_matrix = std::move(residual);
    return reject(std::move(w));
  }

  const Rational rho = Rational(1) / Rational(n - 3);
  std::vector<Rational> f_dense(m * (m - 1));
  for (int idx = 0; idx < m * (m - 1); ++idx)
    f_dense[idx] = f.at(arc_at(idx, m));
  std::vector<uint8_t> ok = arc_consistency_scan(qbar, f, f_dense, rho,
                                                 ExecPolicy{ctx.opt->threads});
  ctx.stats->completion_seconds += seconds_since(t_check);
  for (int idx = 0; idx < m * (m - 1); ++idx) {
    if (ok[idx]) continue;
    Arc bad = arc_at(idx, m);
    NonLinearizableWitness w;
    w.kind = WitnessKind::ArcConsistencyMismatch;
    w.level = m;
    w.arc = bad;
    w.level_matrix = qbar;
    w.check_matrix = Rational(2) * z_matrix(qbar, bad) - rho * f;
    w.expected_constant = f_dense[idx];
    return reject(std::move(w));
  }

  LinearCostMatrix c(n);
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= m; ++j)
      if (i != j) c.set(i, j, f.at(i, j));
  return accept(std::move(c));
}

LinearizationOutcome run_full(const QuadraticCostMatrix& q, PipelineCtx& ctx,
                              int depth) {
  // Recursion levels re-clear and re-reduce: the principal submatrix is
  // generally not reduced with respect to its own largest node.
  QuadraticCostMatrix clean = normalize_structural_zeros(q, false).q;
  auto t_reduce = Clock::now();
  QrfDecomposition dec = qrf_decompose(clean, ExecPolicy{ctx.opt->threads});
  ctx.stats->reduce_seconds += seconds_since(t_reduce);
  LinearizationOutcome sub = run_reduced(dec.reduced, ctx, depth);
  if (!sub.linearizable) return sub;
  return accept(*sub.linearization + dec.linear);
}

void verify_or_throw(const QuadraticCostMatrix& q, const LinearCostMatrix& c,
                     const LinearizeOptions& opt, LinearizeStats* stats) {
  const int n = q.nodes();
  VerifyMode mode = opt.verify;
  if (mode == VerifyMode::Auto)
    mode = n <= 8 ? VerifyMode::Exhaustive : VerifyMode::Sample;
  if (mode == VerifyMode::Off) return;

  auto t0 = Clock::now();
  std::vector<Tour> tours;
  if (mode == VerifyMode::Exhaustive) {
    tours = enumerate_tours(n, std::max(opt.exhaustive_cap, 8));
  } else {
    SeededRng rng(opt.sample_seed);
    tours.reserve(opt.sample_size);
    std::vector<int> rest(n - 1);
    for (long s = 0; s < opt.sample_size; ++s) {
      std::iota(rest.begin(), rest.end(), 2);
      rng.shuffle(rest);
      std::vector<int> seq;
      seq.reserve(n);
      seq.push_back(1);
      seq.insert(seq.end(), rest.begin(), rest.end());
      tours.emplace_back(std::move(seq));
    }
  }
  ExecPolicy exec{opt.threads};
  std::vector<Rational> lhs = quad_tour_costs(q, tours, exec);
  std::vector<Rational> rhs = lin_tour_costs(c, tours, exec);
  for (size_t t = 0; t < tours.size(); ++t)
    if (lhs[t] != rhs[t])
      throw std::logic_error(
          "internal error: produced linearization disagrees with the "
          "quadratic cost on tour " +
          tours[t].str());
  stats->verified_tours += static_cast<long>(tours.size());
  stats->verify_seconds += seconds_since(t0);
}

}  // namespace

LinearizationOutcome linearize(const QuadraticCostMatrix& q,
                               const LinearizeOptions& opt) {
  auto t_total = Clock::now();
  LinearizationOutcome out;
  PipelineCtx ctx{&opt, &out.stats};

  auto t0 = Clock::now();
  NormalizeResult cleaned = normalize_structural_zeros(q, opt.strict_nulls);
  out.stats.normalize_seconds = seconds_since(t0);
  out.stats.cleared_null_cells = static_cast<long>(cleaned.cleared.size());

  std::optional<LinearCostMatrix> c;
  if (opt.fast_path && q.nodes() >= 4) {
    auto t1 = Clock::now();
    c = sufficient_row_cvp(cleaned.q);
    out.stats.fast_path_seconds = seconds_since(t1);
    out.stats.fast_path_used = c.has_value();
  }
  if (!c) {
    LinearizationOutcome core = run_full(cleaned.q, ctx, 1);
    if (!core.linearizable) {
      core.stats = out.stats;
      core.stats.total_seconds = seconds_since(t_total);
      return core;
    }
    c = std::move(core.linearization);
  }
  verify_or_throw(cleaned.q, *c, opt, &out.stats);
  out.linearizable = true;
  out.linearization = std::move(c);
  out.stats.total_seconds = seconds_since(t_total);
  return out;
}

LinearizationOutcome linearize_reduced(const QuadraticCostMatrix& qr,
                                       const LinearizeOptions& opt) {
  QuadraticCostMatrix clean = normalize_structural_zeros(qr, false).q;
  if (!is_quadratic_reduced(clean))
    throw std::invalid_argument("matrix is not in quadratic reduced form");
  LinearizationOutcome out;
  PipelineCtx ctx{&opt, &out.stats};
  LinearizationOutcome core = run_reduced(clean, ctx, 1);
  core.stats = out.stats;
  return core;
}

}  // namespace qtsp
