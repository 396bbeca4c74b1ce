#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "loopgen/bitset.hpp"

namespace loopgen {

enum class Errc {
  bad_input,              // malformed grid / file / flag value
  not_latin_square,       // a row or column repeats an entry
  no_identity,            // no two-sided neutral element
  not_power_associative,  // some element does not generate a group
  construction_invariant, // a builtin constructor failed its self-check
  resource_limit,         // subloop registry exceeded its cap
  search_budget,          // automorphism backtracking exceeded its node cap
  oracle_budget,          // exhaustive tuple count too large
  verify_mismatch,        // oracle and formula engine disagree
};

class LoopError : public std::runtime_error {
public:
  LoopError(Errc code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}
  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) {
  throw LoopError(code, msg);
}

/// Cayley table of a finite loop. Elements are 0-based indices; the neutral
/// element is detected during validation and need not be index 0.
/// Immutable after construction and safe to share across threads.
class LoopTable {
public:
  int size() const noexcept { return n_; }
  int neutral() const noexcept { return neutral_; }

  int mul(int a, int b) const { return cells_[size_t(a) * n_ + b]; }
  const int32_t* row(int a) const { return cells_.data() + size_t(a) * n_; }

  bool is_associative() const {
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b) {
        int ab = mul(a, b);
        for (int c = 0; c < n_; ++c)
          if (mul(ab, c) != mul(a, mul(b, c))) return false;
      }
    return true;
  }

  bool is_commutative() const {
    for (int a = 0; a < n_; ++a)
      for (int b = a + 1; b < n_; ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  std::optional<std::array<int, 3>> associativity_violation() const {
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b) {
        int ab = mul(a, b);
        for (int c = 0; c < n_; ++c)
          if (mul(ab, c) != mul(a, mul(b, c)))
            return std::array<int, 3>{a, b, c};
      }
    return std::nullopt;
  }

private:
  friend LoopTable validate_loop(const std::vector<std::vector<int>>& grid);
  LoopTable(int n, int neutral, std::vector<int32_t> cells)
      : n_(n), neutral_(neutral), cells_(std::move(cells)) {}

  int n_ = 0;
  int neutral_ = 0;
  std::vector<int32_t> cells_;
};

/// Validates a raw n-by-n index grid as a loop: every row and column must be
/// a permutation of 0..n-1 and a two-sided neutral element must exist.
inline LoopTable validate_loop(const std::vector<std::vector<int>>& grid) {
  int n = int(grid.size());
  if (n < 1) fail(Errc::bad_input, "empty table");
  std::vector<int32_t> cells(size_t(n) * n);
  for (int a = 0; a < n; ++a) {
    if (int(grid[a].size()) != n)
      fail(Errc::bad_input, "table is not square at row " + std::to_string(a));
    for (int b = 0; b < n; ++b) {
      int v = grid[a][b];
      if (v < 0 || v >= n)
        fail(Errc::bad_input, "entry out of range at (" + std::to_string(a) +
                                  "," + std::to_string(b) + ")");
      cells[size_t(a) * n + b] = int32_t(v);
    }
  }

  std::vector<char> seen(n);
  for (int a = 0; a < n; ++a) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int b = 0; b < n; ++b) {
      int v = cells[size_t(a) * n + b];
      if (seen[v])
        fail(Errc::not_latin_square, "row " + std::to_string(a) +
                                         " repeats entry " + std::to_string(v));
      seen[v] = 1;
    }
  }
  for (int b = 0; b < n; ++b) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int a = 0; a < n; ++a) {
      int v = cells[size_t(a) * n + b];
      if (seen[v])
        fail(Errc::not_latin_square, "column " + std::to_string(b) +
                                         " repeats entry " + std::to_string(v));
      seen[v] = 1;
    }
  }

  int neutral = -1;
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x)
      ok = cells[size_t(e) * n + x] == x && cells[size_t(x) * n + e] == x;
    if (ok) {
      neutral = e;
      break;
    }
  }
  if (neutral < 0) fail(Errc::no_identity, "no two-sided neutral element");

  return LoopTable(n, neutral, std::move(cells));
}

/// Smallest multiplicatively closed subset containing seed and the neutral
/// element, as a sorted member list. Works on any valid loop; power
/// associativity is not assumed.
inline std::vector<int> closure_members(const LoopTable& loop,
                                        std::span<const int> seed) {
  Bitset in(loop.size());
  std::vector<int> elems;
  auto add = [&](int z) {
    if (!in.test_set(z)) elems.push_back(z);
  };
  add(loop.neutral());
  for (int s : seed) add(s);
  // Grow-and-sweep: every ordered pair gets multiplied once both members
  // are present.
  for (size_t i = 0; i < elems.size(); ++i) {
    int u = elems[i];
    for (size_t j = 0; j <= i; ++j) {
      int v = elems[j];
      add(loop.mul(u, v));
      add(loop.mul(v, u));
    }
  }
  std::sort(elems.begin(), elems.end());
  return elems;
}

struct PowerAssociativity {
  bool ok = true;
  int witness = -1; // element whose generated subloop is not a group
};

/// A loop is power associative when every element generates a group; since
/// <x> is generated by a single element, it suffices that <x> is associative.
inline PowerAssociativity check_power_associative(const LoopTable& loop) {
  for (int x = 0; x < loop.size(); ++x) {
    std::vector<int> s = closure_members(loop, std::span<const int>(&x, 1));
    for (int a : s)
      for (int b : s) {
        int ab = loop.mul(a, b);
        for (int c : s)
          if (loop.mul(ab, c) != loop.mul(a, loop.mul(b, c)))
            return {false, x};
      }
  }
  return {true, -1};
}

/// Element orders and the order classes D_i. orders[x] = |<x>|.
struct OrderProfile {
  std::vector<int> orders;
  std::map<int, std::vector<int>> by_order;

  int order_of(int x) const { return orders[x]; }

  int count_of_order(int i) const {
    auto it = by_order.find(i);
    return it == by_order.end() ? 0 : int(it->second.size());
  }

  std::vector<int> realized_orders() const {
    std::vector<int> out;
    out.reserve(by_order.size());
    for (const auto& [i, _] : by_order) out.push_back(i);
    return out;
  }
};

inline OrderProfile order_profile(const LoopTable& loop) {
  auto pa = check_power_associative(loop);
  if (!pa.ok)
    fail(Errc::not_power_associative,
         "element " + std::to_string(pa.witness) + " does not generate a group");
  OrderProfile p;
  p.orders.resize(loop.size());
  for (int x = 0; x < loop.size(); ++x) {
    int k = int(closure_members(loop, std::span<const int>(&x, 1)).size());
    p.orders[x] = k;
    p.by_order[k].push_back(x);
  }
  return p;
}

} // namespace loopgen
