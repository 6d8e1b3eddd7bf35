#pragma once

#include <cstdint>
#include <vector>

#include "error.hpp"

namespace defect {

/// The k-element subsets of {0..N-1} in lexicographic order of their sorted
/// index tuples, as bitmasks. Indexes the basis of Lambda^k of a rank-N
/// lattice dual.
class WedgeBasis {
 public:
  WedgeBasis(int n, int k) : n_(n), k_(k), index_(size_t{1} << n, -1) {
    if (n < 0 || n > 20 || k < 0 || k > n)
      throw PreconditionError("wedge basis degree out of range");
    std::vector<int> combo;
    build(0, combo);
    for (size_t i = 0; i < masks_.size(); ++i)
      index_[masks_[i]] = static_cast<int>(i);
  }

  int lattice_rank() const { return n_; }
  int degree() const { return k_; }
  size_t size() const { return masks_.size(); }
  uint32_t mask(size_t i) const { return masks_[i]; }
  const std::vector<uint32_t>& masks() const { return masks_; }
  /// -1 when the mask is not a k-subset.
  int index_of(uint32_t mask) const { return index_[mask]; }

  std::vector<int> indices(size_t i) const {
    std::vector<int> out;
    for (int b = 0; b < n_; ++b)
      if (masks_[i] >> b & 1u) out.push_back(b);
    return out;
  }

 private:
  void build(int start, std::vector<int>& combo) {
    if (static_cast<int>(combo.size()) == k_) {
      uint32_t m = 0;
      for (int b : combo) m |= 1u << b;
      masks_.push_back(m);
      return;
    }
    for (int i = start; i < n_; ++i) {
      combo.push_back(i);
      build(i + 1, combo);
      combo.pop_back();
    }
  }

  int n_, k_;
  std::vector<uint32_t> masks_;
  std::vector<int> index_;
};

}  // namespace defect
