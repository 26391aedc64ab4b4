#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace qtsp {

/// Deterministic across platforms: mt19937_64's output sequence is fully
/// specified by the standard, and bounds are applied by rejection sampling
/// rather than std::uniform_int_distribution, whose mapping is
/// implementation-defined.
class SeededRng {
 public:
  explicit SeededRng(unsigned long long seed) : eng_(seed) {}

  /// Uniform draw from [lo, hi], both ends included.
  long bounded(long lo, long hi) {
    if (lo > hi) throw std::invalid_argument("empty draw range");
    const uint64_t range = static_cast<uint64_t>(hi) - static_cast<uint64_t>(lo) + 1;
    const uint64_t spill = (UINT64_MAX % range + 1) % range;  // 2^64 mod range
    uint64_t x;
    do {
      x = eng_();
    } while (spill != 0 && x >= UINT64_MAX - spill + 1);
    return static_cast<long>(lo + static_cast<long>(x % range));
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(bounded(0, static_cast<long>(i) - 1));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace qtsp
