#pragma once

#include <string>
#include <vector>

#include "qtsp/arc.hpp"

namespace qtsp {

/// Hamiltonian cycle on nodes 1..n, n >= 3, stored in the canonical rotation
/// that starts at node 1.  Two visit orders describing the same cycle compare
/// equal after construction.
class Tour {
 public:
  /// Validates that `order` is a permutation of 1..order.size() and rotates it
  /// to start at node 1.
  explicit Tour(std::vector<int> order);

  int nodes() const { return static_cast<int>(order_.size()); }
  const std::vector<int>& order() const { return order_; }

  /// Node visited after position pos (cyclic).
  int successor_at(int pos) const { return order_[(pos + 1) % order_.size()]; }

  std::vector<Arc> arcs() const;
  bool contains(Arc a) const;

  std::string str() const;

  friend bool operator==(const Tour& a, const Tour& b) { return a.order_ == b.order_; }
  friend bool operator!=(const Tour& a, const Tour& b) { return !(a == b); }

 private:
  std::vector<int> order_;
};

}  // namespace qtsp
