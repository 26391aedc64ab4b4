#include "qtsp/tour.hpp"

#include <algorithm>
#include <stdexcept>

namespace qtsp {

Tour::Tour(std::vector<int> order) : order_(std::move(order)) {
  const int n = static_cast<int>(order_.size());
  if (n < 3) throw std::invalid_argument("Tour: needs at least 3 nodes");
  std::vector<char> seen(n + 1, 0);
  for (int v : order_) {
    if (v < 1 || v > n || seen[v]) {
      throw std::invalid_argument("Tour: order is not a permutation of 1.." +
                                  std::to_string(n));
    }
    seen[v] = 1;
  }
  auto one = std::find(order_.begin(), order_.end(), 1);
  std::rotate(order_.begin(), one, order_.end());
}

std::vector<Arc> Tour::arcs() const {
  std::vector<Arc> out;
  out.reserve(order_.size());
  for (int pos = 0; pos < static_cast<int>(order_.size()); ++pos) {
    out.push_back(Arc{order_[pos], successor_at(pos)});
  }
  return out;
}

bool Tour::contains(Arc a) const {
  for (int pos = 0; pos < static_cast<int>(order_.size()); ++pos) {
    if (order_[pos] == a.from) return successor_at(pos) == a.to;
  }
  return false;
}

std::string Tour::str() const {
  std::string s;
  for (int v : order_) {
    s += std::to_string(v);
    s += "->";
  }
  s += "1";
  return s;
}

}  // namespace qtsp
