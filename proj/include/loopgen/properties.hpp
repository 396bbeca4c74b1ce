#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "loopgen/analysis.hpp"

namespace loopgen {

struct PropertyReport {
  struct Item {
    std::string name;
    bool passed = false;
    std::string detail;
  };
  std::vector<Item> items;

  bool all_passed() const {
    for (const Item& it : items)
      if (!it.passed) return false;
    return true;
  }
};

struct PropertyOptions {
  int partition_m = 2;        // order-type partition is checked at this m
  int tuple_samples = 32;     // tuples sampled for order-insensitivity
  int rep_samples = 8;        // members re-checked per orbit (0 = all)
  uint64_t seed = 0x5eed;
};

/// Structural invariant suite runnable on any loaded loop: Latin-square
/// validity, the order-class partition, jump-constant row sums,
/// representative independence under explicit automorphisms, the covering
/// factorization of the jump constants, the order-type partition of the
/// generating tuples, and the tuple-order insensitivity of the generated
/// subloop.
inline PropertyReport run_property_suite(Analysis& an,
                                         const PropertyOptions& opt = {}) {
  PropertyReport rep;
  const LoopTable& loop = an.loop();
  const int n = loop.size();
  auto add = [&](const std::string& name, bool ok, std::string detail = "") {
    rep.items.push_back({name, ok, std::move(detail)});
  };

  {
    bool latin = true;
    std::vector<char> seen(size_t(n), 0);
    for (int a = 0; a < n && latin; ++a) {
      std::fill(seen.begin(), seen.end(), 0);
      for (int b = 0; b < n; ++b) seen[size_t(loop.mul(a, b))] = 1;
      for (char c : seen) latin &= c != 0;
      std::fill(seen.begin(), seen.end(), 0);
      for (int b = 0; b < n; ++b) seen[size_t(loop.mul(b, a))] = 1;
      for (char c : seen) latin &= c != 0;
    }
    add("latin_square", latin);
  }

  {
    const OrderProfile& p = an.profile();
    size_t total = 0;
    bool consistent = true;
    for (const auto& [i, elems] : p.by_order) {
      total += elems.size();
      for (int x : elems) consistent &= p.orders[size_t(x)] == i;
    }
    consistent &= p.orders[size_t(loop.neutral())] == 1;
    add("order_classes_partition", consistent && total == size_t(n),
        "sum |D_i| = " + std::to_string(total));
  }

  {
    bool ok = true;
    for (const Automorphism& g : an.automorphisms())
      if (!g.verify(loop)) {
        ok = false;
        break;
      }
    add("automorphisms_are_homomorphisms", ok,
        std::to_string(an.automorphisms().size()) + " maps checked");
  }

  {
    const JumpTable& jt = an.jumps();
    const OrderProfile& p = an.profile();
    bool ok = true;
    for (int o = 0; o < jt.orbit_count() && ok; ++o) {
      int64_t row = 0;
      for (int q = 0; q < jt.orbit_count(); ++q) row += jt.nu(o, q);
      ok &= row == n;
      for (int i : jt.realized_orders()) {
        int64_t typed = 0;
        for (int q = 0; q < jt.orbit_count(); ++q) typed += jt.nu_i(o, i, q);
        ok &= typed == p.count_of_order(i);
      }
    }
    add("nu_row_sums", ok);
  }

  {
    // recompute each orbit's row from other members than the representative
    const JumpTable& jt = an.jumps();
    const SubloopLattice& lat = an.lattice();
    const OrbitPartition& orb = an.orbits();
    std::mt19937_64 rng(opt.seed);
    bool ok = true;
    std::string detail;
    std::vector<std::vector<int>> members_of(size_t(orb.count()));
    for (int id = 0; id < lat.count(); ++id)
      members_of[size_t(orb.orbit_of[size_t(id)])].push_back(id);
    for (int o = 0; o < orb.count() && ok; ++o) {
      std::vector<int>& ids = members_of[size_t(o)];
      if (opt.rep_samples > 0 && int(ids.size()) > opt.rep_samples) {
        std::shuffle(ids.begin(), ids.end(), rng);
        ids.resize(size_t(opt.rep_samples));
      }
      for (int id : ids) {
        // tally this member's full row, bucketed by element order
        std::map<std::pair<int, int>, int64_t> row;
        for (int x = 0; x < n; ++x)
          row[{an.profile().order_of(x),
               orb.orbit_of[size_t(lat.extend(id, x))]}] += 1;
        for (int i : jt.realized_orders())
          for (int q = 0; q < orb.count() && ok; ++q) {
            auto it = row.find({i, q});
            int64_t have = it == row.end() ? 0 : it->second;
            if (have != jt.nu_i(o, i, q)) {
              ok = false;
              detail = "orbit " + orb.labels[size_t(o)] + " member " +
                       std::to_string(id) + " disagrees";
            }
          }
      }
    }
    add("nu_representative_independence", ok, detail);
  }

  {
    auto check = verify_cover_factorization(an.profile(), an.lattice(),
                                            an.orbits(), an.jumps());
    add("cover_factorization", check.ok(),
        std::to_string(check.pairs_checked) + " pairs, " +
            std::to_string(check.violations.size()) + " violations");
  }

  {
    int m = opt.partition_m;
    GenerationReport whole = an.generation(m);
    BigInt sum = 0;
    for (const OrderType& r : all_order_types(an.profile(), m))
      sum += an.generation_typed(r).gen_count;
    add("order_type_partition", sum == whole.gen_count,
        "m=" + std::to_string(m) + ": " + sum.str() + " vs " +
            whole.gen_count.str());
  }

  {
    std::mt19937_64 rng(opt.seed);
    const SubloopLattice& lat = an.lattice();
    bool ok = true;
    int m = std::max(2, opt.partition_m);
    std::vector<int> tuple(size_t(m), 0);
    for (int s = 0; s < opt.tuple_samples && ok; ++s) {
      for (int j = 0; j < m; ++j) tuple[size_t(j)] = int(rng() % uint64_t(n));
      std::sort(tuple.begin(), tuple.end());
      int ref = -1;
      do {
        int id = lat.bottom();
        for (int x : tuple) id = lat.extend(id, x);
        if (ref < 0) ref = id;
        ok &= id == ref;
      } while (std::next_permutation(tuple.begin(), tuple.end()) && ok);
    }
    add("tuple_order_insensitivity", ok,
        std::to_string(opt.tuple_samples) + " tuples");
  }

  return rep;
}

} // namespace loopgen
