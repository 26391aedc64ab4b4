#include "qtsp/generators.hpp"

#include <stdexcept>
#include <utility>

#include "qtsp/arc.hpp"
#include "qtsp/rng.hpp"

namespace qtsp {

namespace {

Rational draw_value(SeededRng& rng) { return Rational(rng.bounded(-9, 9)); }

Tensor3 draw_tensor(int n, SeededRng& rng) {
  Tensor3 t(n);
  for (Rational& cell : t.v) cell = draw_value(rng);
  return t;
}

}  // namespace

LinearCostMatrix random_linear_matrix(int n, unsigned long long seed) {
  SeededRng rng(seed);
  LinearCostMatrix c(n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j) c.set(i, j, draw_value(rng));
  return c;
}

GeneratedInstance gen_diagonal_embedding(const LinearCostMatrix& c) {
  const int n = c.nodes();
  QuadraticCostMatrix q(n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j) q.set(i, j, i, j, c.at(i, j));
  return GeneratedInstance{std::move(q), c, "diagonal", 0};
}

GeneratedInstance gen_diagonal(int n, unsigned long long seed) {
  GeneratedInstance inst = gen_diagonal_embedding(random_linear_matrix(n, seed));
  inst.seed = seed;
  return inst;
}

GeneratedInstance tensor_sum_instance(const Tensor3& a, const Tensor3& b,
                                      const Tensor3& d, const Tensor3& h) {
  const int n = a.n;
  if (b.n != n || d.n != n || h.n != n)
    throw std::invalid_argument("tensor sizes disagree");
  QuadraticCostMatrix q(n);
  for (int idx = 0; idx < n * (n - 1); ++idx) {
    Arc row = arc_at(idx, n);
    for (int cdx = 0; cdx < n * (n - 1); ++cdx) {
      Arc col = arc_at(cdx, n);
      if (structurally_null(row, col)) continue;
      q.set(row, col,
            a.at(row.from, row.to, col.from) + b.at(row.from, row.to, col.to) +
                d.at(row.from, col.from, col.to) +
                h.at(row.to, col.from, col.to));
    }
  }
  LinearCostMatrix c(n);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      Rational sum;
      for (int k = 1; k <= n; ++k)
        sum += a.at(i, j, k) + b.at(i, j, k) + d.at(k, i, j) + h.at(k, i, j);
      c.set(i, j, std::move(sum));
    }
  }
  return GeneratedInstance{std::move(q), std::move(c), "tensor_sum", 0};
}

GeneratedInstance gen_tensor_sum(int n, unsigned long long seed) {
  if (n < 4) throw std::invalid_argument("tensor-sum family needs n >= 4");
  SeededRng rng(seed);
  Tensor3 a = draw_tensor(n, rng);
  Tensor3 b = draw_tensor(n, rng);
  Tensor3 d = draw_tensor(n, rng);
  Tensor3 h = draw_tensor(n, rng);
  GeneratedInstance inst = tensor_sum_instance(a, b, d, h);
  inst.seed = seed;
  return inst;
}

GeneratedInstance gen_row_cvp(int n, unsigned long long seed) {
  if (n < 4) throw std::invalid_argument("row-constant family needs n >= 4");
  SeededRng rng(seed);
  QuadraticCostMatrix q(n);
  LinearCostMatrix planted(n);
  for (int idx = 0; idx < n * (n - 1); ++idx) {
    Arc owner = arc_at(idx, n);
    const int i = owner.from, j = owner.to;
    std::vector<Rational> a(n + 1), b(n + 1);
    for (int u = 1; u <= n; ++u) a[u] = draw_value(rng);
    for (int v = 1; v <= n; ++v) b[v] = draw_value(rng);
    Rational at_owner = draw_value(rng);
    Rational constant = at_owner;
    for (int u = 1; u <= n; ++u) {
      if (u != i) constant += a[u];
      if (u != j) constant += b[u];
    }
    for (int u = 1; u <= n; ++u)
      for (int v = 1; v <= n; ++v)
        if (u != v && u != i && v != j && !(u == j && v == i))
          q.set(i, j, u, v, a[u] + b[v]);
    q.set(i, j, i, j, std::move(at_owner));
    planted.set(owner, std::move(constant));
  }
  return GeneratedInstance{std::move(q), std::move(planted), "row_cvp", seed};
}

GeneratedInstance gen_equivalence_noise(const GeneratedInstance& base,
                                        unsigned long long seed) {
  if (!base.planted)
    throw std::invalid_argument("equivalence noise needs a planted base");
  const int n = base.q.nodes();
  SeededRng rng(seed);
  const Rational mu(rng.bounded(-8, 8), 4);
  const Rational one_minus_mu = Rational(1) - mu;

  QuadraticCostMatrix q(n);
  for (const QuadEntry& e : base.q.entries_sorted()) {
    q.add(e.i, e.j, e.k, e.l, mu * e.v);
    q.add(e.k, e.l, e.i, e.j, one_minus_mu * e.v);
  }

  LinearCostMatrix planted = *base.planted;
  const int arcs = n * (n - 1);
  for (int idx = 0; idx < arcs; ++idx) {
    Arc e = arc_at(idx, n);
    Rational d = draw_value(rng);
    q.add(e.from, e.to, e.from, e.to, d);
    planted.set(e, planted.at(e) + d);
  }

  auto add_skew = [&](Arc e, Arc f) {
    Rational s = draw_value(rng);
    q.add(e.from, e.to, f.from, f.to, s);
    q.add(f.from, f.to, e.from, e.to, -s);
  };
  if (n <= 8) {
    for (int e = 0; e < arcs; ++e)
      for (int f = e + 1; f < arcs; ++f)
        if (cotour_compatible(arc_at(e, n), arc_at(f, n)))
          add_skew(arc_at(e, n), arc_at(f, n));
  } else {
    for (int draw = 0; draw < 1000; ++draw) {
      Arc e = arc_at(static_cast<int>(rng.bounded(0, arcs - 1)), n);
      Arc f = arc_at(static_cast<int>(rng.bounded(0, arcs - 1)), n);
      if (cotour_compatible(e, f)) add_skew(e, f);
    }
  }
  return GeneratedInstance{std::move(q), std::move(planted),
                           "equivalence_noise", seed};
}

GeneratedInstance gen_random(int n, unsigned long long seed,
                             const Rational& density) {
  if (n < 4) throw std::invalid_argument("random family needs n >= 4");
  if (density < Rational(0) || density > Rational(1))
    throw std::invalid_argument("density must lie in [0, 1]");
  const long p = density.numerator().get_si();
  const long dq = density.denominator().get_si();
  SeededRng rng(seed);
  QuadraticCostMatrix q(n);
  const int arcs = n * (n - 1);
  for (int r = 0; r < arcs; ++r) {
    Arc row = arc_at(r, n);
    for (int c = 0; c < arcs; ++c) {
      Arc col = arc_at(c, n);
      if (structurally_null(row, col)) continue;
      if (rng.bounded(0, dq - 1) < p) q.set(row, col, draw_value(rng));
    }
  }
  return GeneratedInstance{std::move(q), std::nullopt, "random", seed};
}

GeneratedInstance perturb(const GeneratedInstance& base, const Rational& eps,
                          unsigned long long seed) {
  if (eps.is_zero()) throw std::invalid_argument("perturbation needs eps != 0");
  const int n = base.q.nodes();
  std::vector<std::pair<Arc, Arc>> candidates;
  const int inner_arcs = (n - 1) * (n - 2);
  for (int e = 0; e < inner_arcs; ++e)
    for (int f = e + 1; f < inner_arcs; ++f)
      if (cotour_compatible(arc_at(e, n - 1), arc_at(f, n - 1)))
        candidates.emplace_back(arc_at(e, n - 1), arc_at(f, n - 1));
  if (candidates.empty())
    throw std::invalid_argument("no compatible arc pair avoids the last node");
  SeededRng rng(seed);
  auto [e, f] =
      candidates[static_cast<size_t>(
          rng.bounded(0, static_cast<long>(candidates.size()) - 1))];
  QuadraticCostMatrix q = base.q;
  q.add(e.from, e.to, f.from, f.to, eps);
  q.add(f.from, f.to, e.from, e.to, eps);
  return GeneratedInstance{std::move(q), std::nullopt, "perturbed", seed};
}

}  // namespace qtsp
