#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "loopgen/automorphisms.hpp"
#include "loopgen/core.hpp"
#include "loopgen/subloops.hpp"

namespace loopgen {

/// The jump constants nu_i(A, B): how many elements x of order i extend a
/// representative A of the source orbit into the orbit of B. nu(A, B) drops
/// the order restriction. Rows are computed from one representative per
/// orbit; representative independence is a tested invariant, not an
/// assumption.
class JumpTable {
public:
  JumpTable() = default;

  int orbit_count() const { return orbit_count_; }
  const std::vector<int>& realized_orders() const { return orders_; }

  int64_t nu(int from_orbit, int to_orbit) const {
    return nu_total_[size_t(from_orbit) * orbit_count_ + size_t(to_orbit)];
  }

  int64_t nu_i(int from_orbit, int order, int to_orbit) const {
    auto it = order_slot_.find(order);
    if (it == order_slot_.end()) return 0;
    return nu_[(size_t(from_orbit) * orders_.size() + size_t(it->second)) *
                   orbit_count_ +
               size_t(to_orbit)];
  }

private:
  friend JumpTable compute_jump_table(const LoopTable&, const OrderProfile&,
                                      const SubloopLattice&,
                                      const OrbitPartition&, int);
  int orbit_count_ = 0;
  std::vector<int> orders_;       // realized orders, ascending
  std::map<int, int> order_slot_; // order value -> index into orders_
  std::vector<int64_t> nu_;       // [from][order_slot][to]
  std::vector<int64_t> nu_total_; // [from][to]
};

/// Counts, for one representative per orbit, the orbit of <A, x> over all
/// x in C bucketed by element order. Source orbits are independent, so the
/// scan parallelizes over them.
inline JumpTable compute_jump_table(const LoopTable& loop,
                                    const OrderProfile& profile,
                                    const SubloopLattice& lattice,
                                    const OrbitPartition& orbits,
                                    int threads = 1) {
  JumpTable jt;
  jt.orbit_count_ = orbits.count();
  jt.orders_ = profile.realized_orders();
  for (size_t s = 0; s < jt.orders_.size(); ++s)
    jt.order_slot_[jt.orders_[s]] = int(s);
  size_t no = size_t(jt.orbit_count_);
  jt.nu_.assign(no * jt.orders_.size() * no, 0);
  jt.nu_total_.assign(no * no, 0);

  auto fill_row = [&](int o) {
    int rep = orbits.reps[size_t(o)];
    for (int x = 0; x < loop.size(); ++x) {
      int to = orbits.orbit_of[size_t(lattice.extend(rep, x))];
      int slot = jt.order_slot_.at(profile.order_of(x));
      jt.nu_[(size_t(o) * jt.orders_.size() + size_t(slot)) * no + size_t(to)] +=
          1;
      jt.nu_total_[size_t(o) * no + size_t(to)] += 1;
    }
  };

  if (threads <= 1) {
    for (int o = 0; o < orbits.count(); ++o) fill_row(o);
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (int o = next.fetch_add(1); o < orbits.count();
             o = next.fetch_add(1))
          fill_row(o);
      });
    for (auto& th : pool) th.join();
  }
  return jt;
}

/// Number of subloops containing A that lie in the target orbit.
inline int64_t orbit_index(const SubloopLattice& lattice,
                           const OrbitPartition& orbits, int subloop_id,
                           int target_orbit) {
  const Bitset& m = lattice.at(subloop_id).mask;
  int64_t count = 0;
  for (int id = 0; id < lattice.count(); ++id)
    if (orbits.orbit_of[size_t(id)] == target_orbit &&
        lattice.at(id).mask.contains(m))
      ++count;
  return count;
}

/// For A maximal in B the jump constant factors through the lattice:
/// nu_i(A, B) = orbit_index(A, orbit(B)) * |D_i intersect (B minus A)|.
/// Checks that relation on every covering pair and every realized order.
struct CoverCheckReport {
  struct Violation {
    int sub_id, super_id, order;
    int64_t nu_value, expected;
  };
  int64_t pairs_checked = 0;
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

inline CoverCheckReport verify_cover_factorization(const OrderProfile& profile,
                                                   const SubloopLattice& lattice,
                                                   const OrbitPartition& orbits,
                                                   const JumpTable& jt) {
  CoverCheckReport report;
  for (auto [a, b] : lattice.covers()) {
    int from = orbits.orbit_of[size_t(a)];
    int to = orbits.orbit_of[size_t(b)];
    int64_t idx = orbit_index(lattice, orbits, a, to);
    const Subloop& A = lattice.at(a);
    const Subloop& B = lattice.at(b);
    for (int i : profile.realized_orders()) {
      int64_t in_gap = 0;
      for (int x : B.members)
        if (!A.contains(x) && profile.order_of(x) == i) ++in_gap;
      int64_t expect = idx * in_gap;
      int64_t have = jt.nu_i(from, i, to);
      ++report.pairs_checked;
      if (have != expect)
        report.violations.push_back({a, b, i, have, expect});
    }
  }
  return report;
}

/// Orbit digraph in DOT form: one node per orbit, one edge per orbit pair
/// with a positive jump constant. Edge labels join nu_i for the realized
/// orders above 1, separated by colons; covering pairs are drawn bold.
inline void export_dot(std::ostream& out, const SubloopLattice& lattice,
                       const OrbitPartition& orbits, const JumpTable& jt) {
  std::vector<std::pair<int, int>> cover_orbits;
  for (auto [a, b] : lattice.covers())
    cover_orbits.emplace_back(orbits.orbit_of[size_t(a)],
                              orbits.orbit_of[size_t(b)]);
  std::sort(cover_orbits.begin(), cover_orbits.end());
  cover_orbits.erase(std::unique(cover_orbits.begin(), cover_orbits.end()),
                     cover_orbits.end());
  auto is_cover = [&](int a, int b) {
    return std::binary_search(cover_orbits.begin(), cover_orbits.end(),
                              std::make_pair(a, b));
  };

  out << "digraph nu {\n  rankdir=BT;\n  node [shape=box];\n";
  for (int o = 0; o < orbits.count(); ++o)
    out << "  n" << o << " [label=\"" << orbits.labels[size_t(o)] << "\"];\n";
  for (int a = 0; a < orbits.count(); ++a)
    for (int b = 0; b < orbits.count(); ++b) {
      if (a == b || jt.nu(a, b) == 0) continue;
      std::string label;
      for (int i : jt.realized_orders()) {
        if (i == 1) continue;
        if (!label.empty()) label += ":";
        label += std::to_string(jt.nu_i(a, i, b));
      }
      out << "  n" << a << " -> n" << b << " [label=\"" << label << "\""
          << (is_cover(a, b) ? ", style=bold" : ", style=dashed") << "];\n";
    }
  out << "}\n";
}

} // namespace loopgen
