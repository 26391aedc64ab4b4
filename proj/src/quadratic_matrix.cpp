#include "qtsp/quadratic_matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace qtsp {

const Rational QuadraticCostMatrix::zero_{};

QuadraticCostMatrix::QuadraticCostMatrix(int n) : n_(n) {
  if (n < 3) throw std::invalid_argument("quadratic cost matrix needs n >= 3");
  if (n > 255) throw std::invalid_argument("quadratic cost matrix supports n <= 255");
}

uint32_t QuadraticCostMatrix::pack(int i, int j, int k, int l) const {
  require_arc(Arc{i, j}, n_);
  require_arc(Arc{k, l}, n_);
  return (static_cast<uint32_t>(i) << 24) | (static_cast<uint32_t>(j) << 16) |
         (static_cast<uint32_t>(k) << 8) | static_cast<uint32_t>(l);
}

const Rational& QuadraticCostMatrix::value(int i, int j, int k, int l) const {
  auto it = cells_.find(pack(i, j, k, l));
  return it == cells_.end() ? zero_ : it->second;
}

void QuadraticCostMatrix::set(int i, int j, int k, int l, Rational v) {
  uint32_t key = pack(i, j, k, l);
  if (v.is_zero())
    cells_.erase(key);
  else
    cells_[key] = std::move(v);
}

void QuadraticCostMatrix::add(int i, int j, int k, int l, const Rational& v) {
  if (v.is_zero()) return;
  uint32_t key = pack(i, j, k, l);
  auto [it, inserted] = cells_.try_emplace(key, v);
  if (!inserted) {
    it->second += v;
    if (it->second.is_zero()) cells_.erase(it);
  }
}

std::vector<QuadEntry> QuadraticCostMatrix::entries_sorted() const {
  std::vector<QuadEntry> out;
  out.reserve(cells_.size());
  for (const auto& [key, v] : cells_) {
    out.push_back(QuadEntry{static_cast<int>(key >> 24),
                            static_cast<int>((key >> 16) & 0xff),
                            static_cast<int>((key >> 8) & 0xff),
                            static_cast<int>(key & 0xff), v});
  }
  std::sort(out.begin(), out.end(), [this](const QuadEntry& a, const QuadEntry& b) {
    int ra = dense_index(Arc{a.i, a.j}, n_), rb = dense_index(Arc{b.i, b.j}, n_);
    if (ra != rb) return ra < rb;
    return dense_index(Arc{a.k, a.l}, n_) < dense_index(Arc{b.k, b.l}, n_);
  });
  return out;
}

bool QuadraticCostMatrix::operator==(const QuadraticCostMatrix& o) const {
  if (n_ != o.n_) return false;
  if (cells_.size() != o.cells_.size()) return false;
  for (const auto& [key, v] : cells_) {
    auto it = o.cells_.find(key);
    if (it == o.cells_.end() || it->second != v) return false;
  }
  return true;
}

NormalizeResult normalize_structural_zeros(const QuadraticCostMatrix& q,
                                           bool strict) {
  NormalizeResult res{QuadraticCostMatrix(q.nodes()), {}};
  for (const QuadEntry& e : q.entries_sorted()) {
    if (structurally_null_cell(e.i, e.j, e.k, e.l)) {
      if (strict)
        throw std::invalid_argument(
            "nonzero value at structurally null cell (" + std::to_string(e.i) +
            "," + std::to_string(e.j) + ")x(" + std::to_string(e.k) + "," +
            std::to_string(e.l) + ")");
      res.cleared.push_back({e.i, e.j, e.k, e.l, e.v});
    } else {
      res.q.set(e.i, e.j, e.k, e.l, e.v);
    }
  }
  return res;
}

Rational tour_cost_quadratic(const QuadraticCostMatrix& q, const Tour& t) {
  Rational total;
  const auto arcs = t.arcs();
  for (Arc e : arcs)
    for (Arc f : arcs) total += q.value(e, f);
  return total;
}

}  // namespace qtsp
