#include "qtsp/kernels.hpp"

#include <thread>

#include "qtsp/cvp.hpp"
#include "qtsp/linearize.hpp"

#ifdef QTSP_HAVE_OPENMP
#include <omp.h>
#endif

namespace qtsp {

int resolved_thread_count(const ExecPolicy& exec) {
  if (exec.threads > 0) return exec.threads;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

bool openmp_enabled() {
#ifdef QTSP_HAVE_OPENMP
  return true;
#else
  return false;
#endif
}

namespace {

/// Runs body(0..count-1), each index exactly once, into caller-owned slots.
template <typename F>
void parallel_for(int count, const ExecPolicy& exec, F&& body) {
  const int threads = resolved_thread_count(exec);
#ifdef QTSP_HAVE_OPENMP
  if (threads > 1) {
#pragma omp parallel for num_threads(threads) schedule(dynamic)
    for (int idx = 0; idx < count; ++idx) body(idx);
    return;
  }
#else
  (void)threads;
#endif
  for (int idx = 0; idx < count; ++idx) body(idx);
}

}  // namespace

std::vector<Rational> quad_tour_costs(const QuadraticCostMatrix& q,
                                      const std::vector<Tour>& tours,
                                      const ExecPolicy& exec) {
  std::vector<Rational> out(tours.size());
  parallel_for(static_cast<int>(tours.size()), exec,
               [&](int t) { out[t] = tour_cost_quadratic(q, tours[t]); });
  return out;
}

std::vector<Rational> lin_tour_costs(const LinearCostMatrix& c,
                                     const std::vector<Tour>& tours,
                                     const ExecPolicy& exec) {
  std::vector<Rational> out(tours.size());
  parallel_for(static_cast<int>(tours.size()), exec,
               [&](int t) { out[t] = tour_cost_linear(c, tours[t]); });
  return out;
}

std::vector<std::optional<Rational>> tree_edge_etas(
    const QuadraticCostMatrix& qbar,
    const std::vector<std::pair<Arc, Arc>>& edges, const ExecPolicy& exec) {
  std::vector<std::optional<Rational>> out(edges.size());
  parallel_for(static_cast<int>(edges.size()), exec, [&](int e) {
    out[e] = eta_for_pair(qbar, edges[e].first, edges[e].second);
  });
  return out;
}

std::vector<uint8_t> arc_consistency_scan(const QuadraticCostMatrix& qbar,
                                          const LinearCostMatrix& f,
                                          const std::vector<Rational>& f_dense,
                                          const Rational& rho,
                                          const ExecPolicy& exec) {
  const int m = qbar.nodes();
  const int arcs = m * (m - 1);
  std::vector<uint8_t> out(arcs, 0);
  parallel_for(arcs, exec, [&](int idx) {
    Arc a = arc_at(idx, m);
    LinearCostMatrix v = Rational(2) * z_matrix(qbar, a) - rho * f;
    auto cert = kl_cvp_decompose(v, a.from, a.to);
    out[idx] = cert && cert->constant == f_dense[idx] ? 1 : 0;
  });
  return out;
}

QuadraticCostMatrix reduction_shift(const QuadraticCostMatrix& q,
                                    const ExecPolicy& exec) {
  const int n = q.nodes();
  QuadraticCostMatrix shifted(n);

  // Row arcs of the shifted matrix range over the first n-1 nodes only.
  const int m = n - 1;
  const int rows = m * (m - 1);
  std::vector<std::vector<std::pair<int, Rational>>> row_cells(rows);
  parallel_for(rows, exec, [&](int r) {
    Arc ij = arc_at(r, m);
    const int i = ij.from, j = ij.to;
    auto& cells = row_cells[r];
    for (int c = 0; c < rows; ++c) {
      Arc kl = arc_at(c, m);
      const int k = kl.from, l = kl.to;
      Rational v = q.value(i, j, k, l) - q.value(i, j, k, n) -
                   q.value(i, j, n, l) - q.value(i, n, k, l) +
                   q.value(i, n, k, n) + q.value(i, n, n, l) -
                   q.value(n, j, k, l) + q.value(n, j, k, n) +
                   q.value(n, j, n, l);
      if (!v.is_zero()) cells.emplace_back(c, std::move(v));
    }
  });
  for (int r = 0; r < rows; ++r) {
    Arc ij = arc_at(r, m);
    for (auto& [c, v] : row_cells[r]) {
      Arc kl = arc_at(c, m);
      shifted.set(ij.from, ij.to, kl.from, kl.to, std::move(v));
    }
  }
  return shifted;
}

}  // namespace qtsp
