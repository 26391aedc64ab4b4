#include "qtsp/cvp.hpp"

#include <stdexcept>

#include "qtsp/oracle.hpp"

namespace qtsp {

std::optional<WeakSumCertificate> weak_sum_decompose(const LinearCostMatrix& m) {
  const int n = m.nodes();
  WeakSumCertificate cert;
  cert.a.assign(n + 1, Rational());
  cert.b.assign(n + 1, Rational());
  // Gauge and pinned derivation; every unknown is forced once a[1] is fixed.
  cert.a[1] = Rational(0);
  for (int j = 2; j <= n; ++j) cert.b[j] = m.at(1, j);
  for (int i = 3; i <= n; ++i) cert.a[i] = m.at(i, 2) - cert.b[2];
  cert.a[2] = m.at(2, 3) - cert.b[3];
  cert.b[1] = m.at(2, 1) - cert.a[2];
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      if (m.at(i, j) != cert.a[i] + cert.b[j]) return std::nullopt;
    }
  }
  for (int i = 1; i <= n; ++i) cert.constant += cert.a[i] + cert.b[i];
  return cert;
}

std::optional<Rational> cvp_constant(const LinearCostMatrix& m) {
  auto cert = weak_sum_decompose(m);
  if (!cert) return std::nullopt;
  return cert->constant;
}

bool has_zero_cvp(const LinearCostMatrix& m) {
  auto k = cvp_constant(m);
  return k && k->is_zero();
}

std::optional<KlCvpCertificate> kl_cvp_decompose(const LinearCostMatrix& m,
                                                 int k, int l) {
  const int n = m.nodes();
  require_arc(Arc{k, l}, n);
  auto constrained = [&](int i, int j) {
    return i != j && i != k && j != l && !(i == l && j == k);
  };
  KlCvpCertificate cert;
  cert.k = k;
  cert.l = l;
  cert.a.assign(n + 1, Rational());
  cert.b.assign(n + 1, Rational());
  std::vector<bool> a_known(n + 1, false), b_known(n + 1, false);
  a_known[k] = true;  // excluded unknowns stay at zero
  b_known[l] = true;
  int unknown = 2 * (n - 1);
  while (unknown > 0) {
    bool progress = false;
    for (int i = 1; i <= n && unknown > 0; ++i) {
      for (int j = 1; j <= n && unknown > 0; ++j) {
        if (!constrained(i, j)) continue;
        if (a_known[i] && !b_known[j]) {
          cert.b[j] = m.at(i, j) - cert.a[i];
          b_known[j] = true;
          --unknown;
          progress = true;
        } else if (b_known[j] && !a_known[i]) {
          cert.a[i] = m.at(i, j) - cert.b[j];
          a_known[i] = true;
          --unknown;
          progress = true;
        }
      }
    }
    if (unknown == 0) break;
    if (!progress) {
      // The constraint graph has an untouched component; fix its gauge.
      for (int i = 1; i <= n && !progress; ++i)
        if (!a_known[i]) {
          a_known[i] = true;
          --unknown;
          progress = true;
        }
      for (int j = 1; j <= n && !progress; ++j)
        if (!b_known[j]) {
          b_known[j] = true;
          --unknown;
          progress = true;
        }
    }
  }
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (constrained(i, j) && m.at(i, j) != cert.a[i] + cert.b[j])
        return std::nullopt;
  cert.constant = m.at(k, l);
  for (int i = 1; i <= n; ++i) {
    if (i != k) cert.constant += cert.a[i];
    if (i != l) cert.constant += cert.b[i];
  }
  return cert;
}

namespace {

struct ArcContraction {
  LinearCostMatrix m;
  std::vector<int> relabel;  // old node -> new node; both arc endpoints map
                             // to the merged node, which gets the top label
  Rational offset;           // cost of the arc forced by the contraction
};

// Forcing a tour to traverse x -> y: the merged node is entered like x and
// left like y, and the traversal pays m[x][y] once.
ArcContraction contract_arc(const LinearCostMatrix& m, Arc a) {
  const int p = m.nodes();
  if (p < 4) throw std::invalid_argument("contraction needs at least 4 nodes");
  require_arc(a, p);
  ArcContraction out{LinearCostMatrix(p - 1), std::vector<int>(p + 1, 0),
                     m.at(a)};
  int next = 1;
  for (int u = 1; u <= p; ++u)
    if (u != a.from && u != a.to) out.relabel[u] = next++;
  out.relabel[a.from] = out.relabel[a.to] = p - 1;
  for (int u = 1; u <= p; ++u) {
    if (u == a.from || u == a.to) continue;
    for (int v = 1; v <= p; ++v) {
      if (v == u || v == a.from || v == a.to) continue;
      out.m.set(out.relabel[u], out.relabel[v], m.at(u, v));
    }
    out.m.set(out.relabel[u], p - 1, m.at(u, a.from));
    out.m.set(p - 1, out.relabel[u], m.at(a.to, u));
  }
  return out;
}

}  // namespace

std::optional<Rational> pair_tour_constant(const LinearCostMatrix& m, Arc x,
                                           Arc y) {
  const int p = m.nodes();
  require_arc(x, p);
  require_arc(y, p);
  if (!cotour_compatible(x, y))
    throw std::invalid_argument("arcs " + x.str() + " and " + y.str() +
                                " cannot share a tour");
  if (p <= 4) {
    std::optional<Rational> value;
    for (const Tour& t : enumerate_tours(p, 4)) {
      if (!t.contains(x) || !t.contains(y)) continue;
      Rational v = tour_cost_linear(m, t);
      if (!value)
        value = std::move(v);
      else if (*value != v)
        return std::nullopt;
    }
    if (!value)
      throw std::logic_error("compatible arc pair has no joint tour");
    return value;
  }
  ArcContraction first = contract_arc(m, x);
  Arc y_mapped{first.relabel[y.from], first.relabel[y.to]};
  ArcContraction second = contract_arc(first.m, y_mapped);
  auto cert = weak_sum_decompose(second.m);
  if (!cert) return std::nullopt;
  return cert->constant + first.offset + second.offset;
}

}  // namespace qtsp
