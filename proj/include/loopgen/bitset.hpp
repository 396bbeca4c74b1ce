#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace loopgen {

// Fixed-capacity bit set over element indices 0..n-1. Word-based so that
// subset tests and hashing in the subloop registry stay cheap.
class Bitset {
public:
  Bitset() = default;
  explicit Bitset(int nbits) : nbits_(nbits), w_((nbits + 63) / 64, 0) {}

  int capacity() const { return nbits_; }

  void set(int i) { w_[size_t(i) >> 6] |= uint64_t(1) << (i & 63); }
  void reset(int i) { w_[size_t(i) >> 6] &= ~(uint64_t(1) << (i & 63)); }
  bool test(int i) const { return (w_[size_t(i) >> 6] >> (i & 63)) & 1; }

  // Sets bit i, returns whether it was already set.
  bool test_set(int i) {
    uint64_t& w = w_[size_t(i) >> 6];
    uint64_t m = uint64_t(1) << (i & 63);
    bool had = (w & m) != 0;
    w |= m;
    return had;
  }

  int count() const {
    int c = 0;
    for (uint64_t w : w_) c += __builtin_popcountll(w);
    return c;
  }

  bool contains(const Bitset& other) const {
    for (size_t k = 0; k < w_.size(); ++k)
      if (other.w_[k] & ~w_[k]) return false;
    return true;
  }

  bool properly_contains(const Bitset& other) const {
    return contains(other) && *this != other;
  }

  friend bool operator==(const Bitset& a, const Bitset& b) { return a.w_ == b.w_; }
  friend bool operator!=(const Bitset& a, const Bitset& b) { return !(a == b); }

  size_t hash() const {
    uint64_t h = 0xcbf29ce484222325ull;
    for (uint64_t w : w_) {
      h ^= w;
      h *= 0x100000001b3ull;
      h ^= h >> 29;
    }
    return size_t(h);
  }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (size_t k = 0; k < w_.size(); ++k) {
      uint64_t w = w_[k];
      while (w) {
        int bit = __builtin_ctzll(w);
        fn(int(k * 64 + bit));
        w &= w - 1;
      }
    }
  }

private:
  int nbits_ = 0;
  std::vector<uint64_t> w_;
};

struct BitsetHash {
  size_t operator()(const Bitset& b) const { return b.hash(); }
};

} // namespace loopgen
