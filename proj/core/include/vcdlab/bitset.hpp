#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace vcdlab {

/// Runtime-sized bitset over a fixed universe of element indices.
class DynBitset {
 public:
  DynBitset() = default;
  explicit DynBitset(int universe) : n_(universe), w_((universe + 63) / 64, 0) {}

  static DynBitset of(int universe, const std::vector<int>& members) {
    DynBitset b(universe);
    for (int m : members) b.set(m);
    return b;
  }

  int universe() const { return n_; }

  void set(int i) { w_[static_cast<size_t>(i) >> 6] |= (uint64_t{1} << (i & 63)); }
  void reset(int i) { w_[static_cast<size_t>(i) >> 6] &= ~(uint64_t{1} << (i & 63)); }
  bool test(int i) const { return (w_[static_cast<size_t>(i) >> 6] >> (i & 63)) & 1; }

  int count() const {
    int c = 0;
    for (uint64_t w : w_) c += std::popcount(w);
    return c;
  }
  bool any() const {
    for (uint64_t w : w_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }

  DynBitset& operator&=(const DynBitset& o) {
    for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }
  DynBitset& operator|=(const DynBitset& o) {
    for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }
  friend DynBitset operator&(DynBitset a, const DynBitset& b) { return a &= b; }
  friend DynBitset operator|(DynBitset a, const DynBitset& b) { return a |= b; }

  bool intersects(const DynBitset& o) const {
    for (size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }
  bool is_subset_of(const DynBitset& o) const {
    for (size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }

  /// First set bit at index >= from, or -1.
  int next(int from = 0) const {
    if (from >= n_) return -1;
    size_t k = static_cast<size_t>(from) >> 6;
    uint64_t w = w_[k] & (~uint64_t{0} << (from & 63));
    while (true) {
      if (w) return static_cast<int>((k << 6) + static_cast<size_t>(std::countr_zero(w)));
      if (++k == w_.size()) return -1;
      w = w_[k];
    }
  }

  std::vector<int> to_vector() const {
    std::vector<int> out;
    out.reserve(static_cast<size_t>(count()));
    for (int i = next(0); i >= 0; i = next(i + 1)) out.push_back(i);
    return out;
  }

  bool operator==(const DynBitset& o) const { return n_ == o.n_ && w_ == o.w_; }

  /// Lexicographic on the bit sequence b0, b1, ...: at the first differing
  /// index, the set with the bit clear compares smaller.
  bool lex_less(const DynBitset& o) const {
    for (size_t k = 0; k < w_.size() && k < o.w_.size(); ++k) {
      uint64_t x = w_[k] ^ o.w_[k];
      if (x) {
        int j = std::countr_zero(x);
        return !((w_[k] >> j) & 1);
      }
    }
    return w_.size() < o.w_.size();
  }

  size_t hash() const {
    size_t h = 1469598103934665603ull;
    for (uint64_t w : w_) {
      h ^= static_cast<size_t>(w);
      h *= 1099511628211ull;
    }
    return h;
  }

 private:
  int n_ = 0;
  std::vector<uint64_t> w_;
};

struct DynBitsetHash {
  size_t operator()(const DynBitset& b) const { return b.hash(); }
};

}  // namespace vcdlab
