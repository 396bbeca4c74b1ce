#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "loopgen/core.hpp"
#include "loopgen/probability.hpp"
#include "loopgen/subloops.hpp"

namespace loopgen {

struct MonteCarlo {
  uint64_t hits = 0;
  uint64_t samples = 0;
  uint64_t seed = 0;
};

struct OracleResult {
  int m = 0;
  std::optional<OrderType> type;
  BigInt gen_count;                // exhaustive mode
  std::optional<MonteCarlo> mc;    // sampling mode
  double elapsed_seconds = 0.0;
};

struct OracleOptions {
  uint64_t budget = 100'000'000; // extend-cache lookups allowed
  int threads = 1;
};

namespace detail {

// Counts tuples below a fixed first coordinate by depth-first search; the
// subloop id of each prefix is a single cache lookup per added element.
inline int64_t count_from(const SubloopLattice& lattice,
                          const OrderProfile& profile, int first, int m,
                          const std::vector<int>* type_budget) {
  const int n = lattice.loop().size();
  std::vector<int> remaining;
  if (type_budget) remaining = *type_budget;

  int64_t count = 0;
  auto dfs = [&](auto&& self, int id, int depth) -> void {
    if (depth == m) {
      if (id == lattice.top()) ++count;
      return;
    }
    for (int x = 0; x < n; ++x) {
      if (type_budget) {
        int o = profile.order_of(x);
        if (o >= int(remaining.size()) || remaining[size_t(o)] == 0) continue;
        remaining[size_t(o)] -= 1;
        self(self, lattice.extend(id, x), depth + 1);
        remaining[size_t(o)] += 1;
      } else {
        self(self, lattice.extend(id, x), depth + 1);
      }
    }
  };

  int id0 = lattice.extend(lattice.bottom(), first);
  if (type_budget) {
    int o = profile.order_of(first);
    if (o >= int(remaining.size()) || remaining[size_t(o)] == 0) return 0;
    remaining[size_t(o)] -= 1;
    dfs(dfs, id0, 1);
  } else {
    dfs(dfs, id0, 1);
  }
  return count;
}

} // namespace detail

/// Brute-force count of generating m-tuples directly from the Cayley table:
/// iterates all |C|^m tuples, folding the memoized extend cache, optionally
/// filtered by order type. Independent of orbits and jump constants.
inline OracleResult exhaustive_count(const LoopTable& loop,
                                     const SubloopLattice& lattice,
                                     const OrderProfile& profile, int m,
                                     std::optional<OrderType> type = {},
                                     const OracleOptions& opt = {}) {
  if (m < 0) fail(Errc::bad_input, "tuple length must be nonnegative");
  if (type && type->length() != m)
    fail(Errc::bad_input, "order type length differs from m");

  // worst-case lookups: n + n^2 + ... + n^m
  long double work = 0, p = 1;
  for (int j = 0; j < m; ++j) {
    p *= loop.size();
    work += p;
  }
  if (work > (long double)opt.budget)
    fail(Errc::oracle_budget,
         "exhaustive count needs ~" + std::to_string((double)work) +
             " lookups, budget is " + std::to_string(opt.budget));

  auto start = std::chrono::steady_clock::now();
  OracleResult res;
  res.m = m;
  res.type = type;

  std::vector<int> budget_by_order;
  std::vector<int>* budget_ptr = nullptr;
  if (type) {
    int max_order = 0;
    for (int i : type->orders) max_order = std::max(max_order, i);
    budget_by_order.assign(size_t(max_order) + 1, 0);
    for (int i : type->orders) budget_by_order[size_t(i)] += 1;
    budget_ptr = &budget_by_order;
  }

  if (m == 0) {
    res.gen_count = (lattice.bottom() == lattice.top()) ? 1 : 0;
  } else {
    const int n = loop.size();
    int threads = std::max(1, opt.threads);
    if (threads == 1) {
      int64_t total = 0;
      for (int first = 0; first < n; ++first)
        total += detail::count_from(lattice, profile, first, m, budget_ptr);
      res.gen_count = total;
    } else {
      std::vector<int64_t> partial(size_t(threads), 0);
      std::vector<std::thread> pool;
      std::atomic<int> next{0};
      for (int t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
          for (int first = next.fetch_add(1); first < n;
               first = next.fetch_add(1))
            partial[size_t(t)] +=
                detail::count_from(lattice, profile, first, m, budget_ptr);
        });
      for (auto& th : pool) th.join();
      int64_t total = 0;
      for (int64_t c : partial) total += c;
      res.gen_count = total;
    }
  }

  res.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return res;
}

/// Samples uniform i.i.d. tuples with a seeded mt19937_64 (indices drawn by
/// rejection below the largest multiple of n, then reduced mod n), so runs
/// are reproducible given the seed.
inline OracleResult monte_carlo(const LoopTable& loop,
                                const SubloopLattice& lattice,
                                const OrderProfile& profile, int m,
                                uint64_t samples, uint64_t seed,
                                std::optional<OrderType> type = {}) {
  if (samples < 1) fail(Errc::bad_input, "need at least one sample");
  if (type && type->length() != m)
    fail(Errc::bad_input, "order type length differs from m");

  auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(seed);
  const uint64_t n = uint64_t(loop.size());
  const uint64_t limit = ~uint64_t(0) - (~uint64_t(0) % n);
  auto draw = [&]() -> int {
    uint64_t v;
    do {
      v = rng();
    } while (v >= limit);
    return int(v % n);
  };

  OracleResult res;
  res.m = m;
  res.type = type;
  MonteCarlo mc;
  mc.samples = samples;
  mc.seed = seed;

  std::vector<int> tuple(size_t(std::max(m, 0)));
  for (uint64_t s = 0; s < samples; ++s) {
    int id = lattice.bottom();
    for (int j = 0; j < m; ++j) {
      tuple[size_t(j)] = draw();
      id = lattice.extend(id, tuple[size_t(j)]);
    }
    if (id != lattice.top()) continue;
    if (type) {
      std::vector<int> got;
      got.reserve(size_t(m));
      for (int j = 0; j < m; ++j) got.push_back(profile.order_of(tuple[size_t(j)]));
      std::sort(got.begin(), got.end());
      if (got != type->orders) continue;
    }
    ++mc.hits;
  }
  res.mc = mc;
  res.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return res;
}

} // namespace loopgen
