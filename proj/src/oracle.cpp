#include "qtsp/oracle.hpp"

#include <algorithm>
#include <numeric>

namespace qtsp {

namespace {

// Exact Gaussian elimination kept in reduced form as rows arrive, so a
// contradiction is detected at the row that introduces it.
class ExactSystem {
 public:
  explicit ExactSystem(int vars) : vars_(vars) {}

  bool add(std::vector<Rational> coef, Rational rhs) {
    for (const Row& r : rows_) {
      if (coef[r.pivot].is_zero()) continue;
      Rational f = coef[r.pivot];
      for (int j = 0; j < vars_; ++j) coef[j] -= f * r.coef[j];
      rhs -= f * r.rhs;
    }
    int pivot = -1;
    for (int j = 0; j < vars_; ++j) {
      if (!coef[j].is_zero()) {
        pivot = j;
        break;
      }
    }
    if (pivot < 0) return rhs.is_zero();
    Rational inv = coef[pivot];
    for (int j = 0; j < vars_; ++j) coef[j] /= inv;
    rhs /= inv;
    for (Row& r : rows_) {
      if (r.coef[pivot].is_zero()) continue;
      Rational f = r.coef[pivot];
      for (int j = 0; j < vars_; ++j) r.coef[j] -= f * coef[j];
      r.rhs -= f * rhs;
    }
    rows_.push_back(Row{std::move(coef), std::move(rhs), pivot});
    return true;
  }

  // Free variables pinned at zero.
  std::vector<Rational> solution() const {
    std::vector<Rational> val(vars_);
    for (const Row& r : rows_) val[r.pivot] = r.rhs;
    return val;
  }

 private:
  struct Row {
    std::vector<Rational> coef;
    Rational rhs;
    int pivot;
  };
  int vars_;
  std::vector<Row> rows_;
};

}  // namespace

std::vector<Tour> enumerate_tours(int n, int cap) {
  if (n < 3) throw std::invalid_argument("tours need n >= 3");
  if (n > cap)
    throw TourCapExceeded("tour enumeration over " + std::to_string(n) +
                          " nodes exceeds cap " + std::to_string(cap));
  std::vector<int> rest(n - 1);
  std::iota(rest.begin(), rest.end(), 2);
  std::vector<Tour> out;
  do {
    std::vector<int> seq;
    seq.reserve(n);
    seq.push_back(1);
    seq.insert(seq.end(), rest.begin(), rest.end());
    out.emplace_back(std::move(seq));
  } while (std::next_permutation(rest.begin(), rest.end()));
  return out;
}

Tour tour_insert_node(const Tour& t, int node, Arc a) {
  if (!t.contains(a))
    throw std::invalid_argument("tour does not use arc " + a.str());
  std::vector<int> seq;
  seq.reserve(t.nodes() + 1);
  for (int u : t.order()) {
    seq.push_back(u);
    if (u == a.from) seq.push_back(node);
  }
  return Tour(seq);
}

BruteLinearization brute_linearize(const QuadraticCostMatrix& q, int cap) {
  const int n = q.nodes();
  const int vars = n * (n - 1);
  ExactSystem sys(vars);
  for (const Tour& t : enumerate_tours(n, cap)) {
    std::vector<Rational> coef(vars);
    for (Arc a : t.arcs()) coef[dense_index(a, n)] = Rational(1);
    if (!sys.add(std::move(coef), tour_cost_quadratic(q, t)))
      return BruteLinearization{std::nullopt, t};
  }
  std::vector<Rational> val = sys.solution();
  LinearCostMatrix c(n);
  for (int idx = 0; idx < vars; ++idx) c.set(arc_at(idx, n), val[idx]);
  return BruteLinearization{std::move(c), std::nullopt};
}

std::optional<Tour> brute_verify(const QuadraticCostMatrix& q,
                                 const LinearCostMatrix& c, int cap) {
  if (q.nodes() != c.nodes())
    throw std::invalid_argument("matrix sizes disagree");
  for (const Tour& t : enumerate_tours(q.nodes(), cap))
    if (tour_cost_quadratic(q, t) != tour_cost_linear(c, t)) return t;
  return std::nullopt;
}

std::optional<CvpCertificate> brute_cvp(const LinearCostMatrix& m) {
  const int n = m.nodes();
  // Variables: a[1..n] then b[1..n].
  ExactSystem sys(2 * n);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      std::vector<Rational> coef(2 * n);
      coef[i - 1] = Rational(1);
      coef[n + j - 1] = Rational(1);
      if (!sys.add(std::move(coef), m.at(i, j))) return std::nullopt;
    }
  }
  std::vector<Rational> val = sys.solution();
  CvpCertificate cert;
  cert.a.assign(n + 1, Rational());
  cert.b.assign(n + 1, Rational());
  for (int i = 1; i <= n; ++i) {
    cert.a[i] = val[i - 1];
    cert.b[i] = val[n + i - 1];
    cert.constant += cert.a[i] + cert.b[i];
  }
  return cert;
}

std::optional<CvpCertificate> brute_kl_cvp(const LinearCostMatrix& m, int k,
                                           int l) {
  const int n = m.nodes();
  require_arc(Arc{k, l}, n);
  ExactSystem sys(2 * n);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (i == j || i == k || j == l) continue;
      if (i == l && j == k) continue;
      std::vector<Rational> coef(2 * n);
      coef[i - 1] = Rational(1);
      coef[n + j - 1] = Rational(1);
      if (!sys.add(std::move(coef), m.at(i, j))) return std::nullopt;
    }
  }
  std::vector<Rational> val = sys.solution();
  CvpCertificate cert;
  cert.a.assign(n + 1, Rational());
  cert.b.assign(n + 1, Rational());
  cert.constant = m.at(k, l);
  for (int i = 1; i <= n; ++i) {
    if (i != k) {
      cert.a[i] = val[i - 1];
      cert.constant += cert.a[i];
    }
    if (i != l) {
      cert.b[i] = val[n + i - 1];
      cert.constant += cert.b[i];
    }
  }
  return cert;
}

}  // namespace qtsp
