#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "loopgen/core.hpp"

namespace loopgen {

struct Subloop {
  int id = -1;
  std::vector<int> members; // sorted; canonical form
  Bitset mask;

  int size() const { return int(members.size()); }
  bool contains(int x) const { return mask.test(x); }
};

/// Registry of every subloop of a loop, the covering relation (transitive
/// reduction of inclusion), and the fully materialized extend cache
/// extend(A, x) = <A, x>. Immutable once enumerated; safe for concurrent
/// readers.
class SubloopLattice {
public:
  /// Breadth-first enumeration from the trivial subloop: every registered
  /// subloop is extended by every element, so every subloop of a finite loop
  /// is reached (add one generator at a time). Throws Errc::resource_limit
  /// when the registry would exceed max_subloops.
  static SubloopLattice enumerate(const LoopTable& loop,
                                  size_t max_subloops = 100000) {
    SubloopLattice lat;
    lat.loop_ = &loop;
    lat.cap_ = max_subloops;
    int n = loop.size();

    std::vector<int> bottom{loop.neutral()};
    lat.register_set(bottom);

    // scratch buffers reused across closures
    std::vector<int> elems;
    elems.reserve(size_t(n));
    for (size_t head = 0; head < lat.all_.size(); ++head) {
      lat.extend_[head].assign(size_t(n), -1);
      for (int x = 0; x < n; ++x) {
        if (lat.all_[head].mask.test(x)) {
          lat.extend_[head][size_t(x)] = int32_t(head);
          continue;
        }
        Bitset in = lat.all_[head].mask;
        elems = lat.all_[head].members;
        size_t base = elems.size();
        in.set(x);
        elems.push_back(x);
        // close over products; pairs inside the base are already closed
        for (size_t i = base; i < elems.size(); ++i) {
          int u = elems[i];
          const int32_t* urow = loop.row(u);
          for (size_t j = 0; j < elems.size(); ++j) {
            int v = elems[j];
            int uv = urow[v];
            if (!in.test_set(uv)) elems.push_back(uv);
            int vu = loop.mul(v, u);
            if (!in.test_set(vu)) elems.push_back(vu);
          }
        }
        // registration may grow extend_, so index the row afresh
        int id = lat.register_set_masked(elems, in);
        lat.extend_[head][size_t(x)] = int32_t(id);
      }
    }

    lat.top_ = -1;
    for (const Subloop& s : lat.all_)
      if (s.size() == n) lat.top_ = s.id;
    if (lat.top_ < 0)
      fail(Errc::construction_invariant, "whole loop missing from registry");
    lat.compute_covers();
    return lat;
  }

  const LoopTable& loop() const { return *loop_; }
  int count() const { return int(all_.size()); }
  const Subloop& at(int id) const { return all_[size_t(id)]; }
  int bottom() const { return bottom_; }
  int top() const { return top_; }

  /// id of <A, x> for a registered subloop id.
  int extend(int id, int x) const { return extend_[size_t(id)][size_t(x)]; }

  /// id of <seed>; folds the extend cache over the seed.
  int closure(std::span<const int> seed) const {
    int id = bottom_;
    for (int x : seed) id = extend(id, x);
    return id;
  }

  /// Registry id of an explicit member set, or -1.
  int find(const Bitset& mask) const {
    auto it = index_.find(mask);
    return it == index_.end() ? -1 : it->second;
  }

  /// Covering pairs (a, b): a is maximal in b.
  const std::vector<std::pair<int, int>>& covers() const { return covers_; }

private:
  int register_set(std::vector<int>& members) {
    std::sort(members.begin(), members.end());
    Bitset mask(loop_->size());
    for (int x : members) mask.set(x);
    return register_set_masked(members, mask);
  }

  int register_set_masked(const std::vector<int>& members, const Bitset& mask) {
    auto it = index_.find(mask);
    if (it != index_.end()) return it->second;
    if (all_.size() >= cap_)
      fail(Errc::resource_limit,
           "subloop registry exceeded cap of " + std::to_string(cap_));
    int id = int(all_.size());
    Subloop s;
    s.id = id;
    s.members = members;
    std::sort(s.members.begin(), s.members.end());
    s.mask = mask;
    index_.emplace(s.mask, id);
    all_.push_back(std::move(s));
    extend_.emplace_back();
    return id;
  }

  void compute_covers() {
    // ids grouped by cardinality, ascending
    std::vector<int> by_size(all_.size());
    for (size_t i = 0; i < all_.size(); ++i) by_size[i] = int(i);
    std::stable_sort(by_size.begin(), by_size.end(), [&](int a, int b) {
      return all_[size_t(a)].size() < all_[size_t(b)].size();
    });
    std::vector<int> subs;
    for (int b : by_size) {
      const Subloop& B = all_[size_t(b)];
      subs.clear();
      for (int a : by_size) {
        const Subloop& A = all_[size_t(a)];
        if (A.size() >= B.size()) break;
        if (B.mask.contains(A.mask)) subs.push_back(a);
      }
      // subs is sorted by cardinality; a is maximal in b when no other
      // proper subloop of b lies strictly between them
      for (size_t i = 0; i < subs.size(); ++i) {
        const Subloop& A = all_[size_t(subs[i])];
        bool maximal = true;
        for (size_t j = i + 1; j < subs.size() && maximal; ++j) {
          const Subloop& M = all_[size_t(subs[j])];
          if (M.size() > A.size() && M.mask.contains(A.mask)) maximal = false;
        }
        if (maximal) covers_.emplace_back(subs[i], b);
      }
    }
    std::sort(covers_.begin(), covers_.end());
  }

  const LoopTable* loop_ = nullptr;
  size_t cap_ = 0;
  std::vector<Subloop> all_;
  std::vector<std::vector<int32_t>> extend_;
  std::unordered_map<Bitset, int, BitsetHash> index_;
  std::vector<std::pair<int, int>> covers_;
  int bottom_ = 0;
  int top_ = -1;
};

inline SubloopLattice enumerate_lattice(const LoopTable& loop,
                                        size_t max_subloops = 100000) {
  return SubloopLattice::enumerate(loop, max_subloops);
}

} // namespace loopgen
