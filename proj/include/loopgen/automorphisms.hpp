#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "loopgen/core.hpp"
#include "loopgen/subloops.hpp"

namespace loopgen {

struct Automorphism {
  std::vector<int> perm; // perm[x*y] == perm[x]*perm[y] for all x, y

  int operator()(int x) const { return perm[size_t(x)]; }

  bool verify(const LoopTable& loop) const {
    for (int a = 0; a < loop.size(); ++a)
      for (int b = 0; b < loop.size(); ++b)
        if (perm[size_t(loop.mul(a, b))] !=
            loop.mul(perm[size_t(a)], perm[size_t(b)]))
          return false;
    return true;
  }
};

/// Greedy generating tuple: repeatedly add the element whose extension grows
/// the current subloop the most (ties broken by smallest index).
inline std::vector<int> find_generating_tuple(const LoopTable& loop,
                                              const SubloopLattice& lattice) {
  std::vector<int> tuple;
  int id = lattice.bottom();
  while (id != lattice.top()) {
    int best = -1, best_size = -1;
    for (int x = 0; x < loop.size(); ++x) {
      if (lattice.at(id).contains(x)) continue;
      int sz = lattice.at(lattice.extend(id, x)).size();
      if (sz > best_size) {
        best_size = sz;
        best = x;
      }
    }
    tuple.push_back(best);
    id = lattice.extend(id, best);
  }
  return tuple;
}

struct AutSearchOptions {
  uint64_t node_budget = 50'000'000; // assignments before giving up
  uint32_t shuffle_seed = 0;         // nonzero: shuffle candidate order
};

namespace detail {

// Backtracking over images of a generating tuple. A partial map is extended
// product-by-product: whenever both factors of a product have images, the
// image of the product is forced. Conflicts prune the branch; every
// conflict-free completion of the tuple defines the map on the whole loop.
class AutSearch {
public:
  AutSearch(const LoopTable& loop, std::vector<int> tuple,
            const std::vector<int>& orders, const AutSearchOptions& opt)
      : loop_(loop), orders_(orders), tuple_(std::move(tuple)), opt_(opt) {
    int n = loop.size();
    img_.assign(size_t(n), -1);
    pre_.assign(size_t(n), -1);
    candidates_.resize(tuple_.size());
    for (size_t k = 0; k < tuple_.size(); ++k) {
      for (int c = 0; c < n; ++c)
        if (orders_[size_t(c)] == orders_[size_t(tuple_[k])])
          candidates_[k].push_back(c);
      if (opt_.shuffle_seed) {
        std::mt19937 rng(opt_.shuffle_seed + uint32_t(k));
        std::shuffle(candidates_[k].begin(), candidates_[k].end(), rng);
      }
    }
  }

  std::vector<Automorphism> run() {
    size_t mark = trail_.size();
    if (!assign(loop_.neutral(), loop_.neutral()))
      fail(Errc::construction_invariant, "neutral element not fixable");
    descend(0);
    rollback(mark);
    std::sort(out_.begin(), out_.end(),
              [](const Automorphism& a, const Automorphism& b) {
                return a.perm < b.perm;
              });
    return std::move(out_);
  }

private:
  void descend(size_t level) {
    if (level == tuple_.size()) {
      out_.push_back(Automorphism{img_});
      return;
    }
    for (int c : candidates_[level]) {
      size_t mark = trail_.size();
      if (assign(tuple_[level], c)) descend(level + 1);
      rollback(mark);
    }
  }

  bool define(int a, int b) {
    if (orders_[size_t(a)] != orders_[size_t(b)]) return false;
    if (pre_[size_t(b)] != -1) return false;
    img_[size_t(a)] = b;
    pre_[size_t(b)] = a;
    trail_.push_back(a);
    return true;
  }

  // img[w] must equal z; defines it when still open.
  bool enforce(int w, int z) {
    int have = img_[size_t(w)];
    if (have != -1) return have == z;
    return define(w, z);
  }

  bool assign(int a, int b) {
    if (++nodes_ > opt_.node_budget)
      fail(Errc::search_budget,
           "automorphism search exceeded node budget of " +
               std::to_string(opt_.node_budget));
    size_t head = trail_.size();
    int have = img_[size_t(a)];
    if (have != -1) return have == b;
    if (!define(a, b)) return false;
    while (head < trail_.size()) {
      int u = trail_[head];
      int iu = img_[size_t(u)];
      for (size_t j = 0; j <= head; ++j) {
        int v = trail_[j];
        int iv = img_[size_t(v)];
        if (!enforce(loop_.mul(u, v), loop_.mul(iu, iv))) return false;
        if (!enforce(loop_.mul(v, u), loop_.mul(iv, iu))) return false;
      }
      ++head;
    }
    return true;
  }

  void rollback(size_t mark) {
    while (trail_.size() > mark) {
      int a = trail_.back();
      trail_.pop_back();
      pre_[size_t(img_[size_t(a)])] = -1;
      img_[size_t(a)] = -1;
    }
  }

  const LoopTable& loop_;
  const std::vector<int>& orders_;
  std::vector<int> tuple_;
  AutSearchOptions opt_;
  std::vector<int> img_, pre_, trail_;
  std::vector<std::vector<int>> candidates_;
  std::vector<Automorphism> out_;
  uint64_t nodes_ = 0;
};

} // namespace detail

/// All automorphisms of the loop (every completion of the backtracking
/// search), sorted for a stable order. The full list trivially generates
/// Aut(C); its size is |Aut(C)|.
inline std::vector<Automorphism> automorphism_generators(
    const LoopTable& loop, const SubloopLattice& lattice,
    const AutSearchOptions& opt = {}) {
  std::vector<int> orders(size_t(loop.size()));
  for (int x = 0; x < loop.size(); ++x)
    orders[size_t(x)] = lattice.at(lattice.extend(lattice.bottom(), x)).size();
  detail::AutSearch search(loop, find_generating_tuple(loop, lattice), orders,
                           opt);
  return search.run();
}

/// Partition of the subloop registry into Aut(C)-orbits. Orbit ids are
/// assigned by ascending representative subloop id, so orbit 0 is the orbit
/// of the bottom subloop.
struct OrbitPartition {
  std::vector<int> orbit_of;        // subloop id -> orbit id
  std::vector<int> reps;            // orbit id -> minimal subloop id
  std::vector<int> sizes;           // orbit id -> number of subloops
  std::vector<std::string> labels;  // orbit id -> display tag
  int bottom_orbit = 0;
  int top_orbit = -1;

  int count() const { return int(reps.size()); }

  int find_label(const std::string& label) const {
    for (int o = 0; o < count(); ++o)
      if (labels[size_t(o)] == label) return o;
    return -1;
  }
};

namespace detail {

class UnionFind {
public:
  explicit UnionFind(int n) : parent_(size_t(n)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int a) {
    while (parent_[size_t(a)] != a) {
      parent_[size_t(a)] = parent_[size_t(parent_[size_t(a)])];
      a = parent_[size_t(a)];
    }
    return a;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[size_t(std::max(a, b))] = std::min(a, b);
  }

private:
  std::vector<int> parent_;
};

std::vector<std::string> orbit_labels(const SubloopLattice& lattice,
                                      const OrbitPartition& orbits);

} // namespace detail

inline OrbitPartition orbit_partition(const SubloopLattice& lattice,
                                      const std::vector<Automorphism>& gens) {
  detail::UnionFind uf(lattice.count());
  std::vector<int> image;
  for (const Automorphism& g : gens) {
    for (int id = 0; id < lattice.count(); ++id) {
      const Subloop& s = lattice.at(id);
      image.clear();
      Bitset mask(lattice.loop().size());
      for (int x : s.members) mask.set(g(x));
      int to = lattice.find(mask);
      if (to < 0)
        fail(Errc::construction_invariant,
             "automorphism image of a subloop is not a subloop");
      uf.unite(id, to);
    }
  }

  OrbitPartition p;
  p.orbit_of.assign(size_t(lattice.count()), -1);
  std::vector<int> root_to_orbit(size_t(lattice.count()), -1);
  for (int id = 0; id < lattice.count(); ++id) {
    int root = uf.find(id); // roots are minimal ids, visited in order
    if (root_to_orbit[size_t(root)] < 0) {
      root_to_orbit[size_t(root)] = int(p.reps.size());
      p.reps.push_back(root);
      p.sizes.push_back(0);
    }
    int o = root_to_orbit[size_t(root)];
    p.orbit_of[size_t(id)] = o;
    p.sizes[size_t(o)] += 1;
  }
  p.bottom_orbit = p.orbit_of[size_t(lattice.bottom())];
  p.top_orbit = p.orbit_of[size_t(lattice.top())];
  p.labels = detail::orbit_labels(lattice, p);
  return p;
}

namespace detail {

// Display-only isomorphism tags from cheap invariants. Everything downstream
// keys on orbit ids; the labels just make output comparable across runs and
// against hand calculations.
inline std::string base_label(const LoopTable& loop, const Subloop& s,
                              bool is_top) {
  int k = s.size();
  if (k == 1) return "1";

  // induced table restricted to s
  std::vector<int> pos(size_t(loop.size()), -1);
  for (int i = 0; i < k; ++i) pos[size_t(s.members[size_t(i)])] = i;
  auto mul = [&](int i, int j) {
    return pos[size_t(
        loop.mul(s.members[size_t(i)], s.members[size_t(j)]))];
  };

  bool assoc = true;
  for (int a = 0; a < k && assoc; ++a)
    for (int b = 0; b < k && assoc; ++b)
      for (int c = 0; c < k; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) {
          assoc = false;
          break;
        }
  bool comm = true;
  for (int a = 0; a < k && comm; ++a)
    for (int b = a + 1; b < k; ++b)
      if (mul(a, b) != mul(b, a)) {
        comm = false;
        break;
      }

  // element orders within s
  std::map<int, int> profile;
  for (int i = 0; i < k; ++i) {
    Bitset seen(k);
    std::vector<int> list;
    auto push = [&](int z) {
      if (!seen.test_set(z)) list.push_back(z);
    };
    push(pos[size_t(loop.neutral())]);
    push(i);
    for (size_t a = 0; a < list.size(); ++a)
      for (size_t b = 0; b <= a; ++b) {
        push(mul(list[a], list[b]));
        push(mul(list[b], list[a]));
      }
    profile[int(list.size())] += 1;
  }
  int max_ord = profile.rbegin()->first;

  if (assoc) {
    if (max_ord == k) return "C" + std::to_string(k);
    if (comm && max_ord == 2) return "E" + std::to_string(k);
    if (k == 6 && !comm) return "S3";
    if (k == 12 && !comm && profile[2] == 3 && profile[3] == 8) return "A4";
  } else {
    if (k == 12 && profile[2] == 9 && profile[3] == 2) return "M(S3)";
    if (k == 24 && profile[2] == 15 && profile[3] == 8) return "M(A4)";
  }
  return is_top ? "C" : "L" + std::to_string(k);
}

inline std::vector<std::string> orbit_labels(const SubloopLattice& lattice,
                                             const OrbitPartition& orbits) {
  std::vector<std::string> labels(size_t(orbits.count()));
  for (int o = 0; o < orbits.count(); ++o)
    labels[size_t(o)] = base_label(lattice.loop(), lattice.at(orbits.reps[size_t(o)]),
                                   o == orbits.top_orbit);

  // Klein-four orbits: tell the two kinds apart by whether a representative
  // lies inside a copy of A4. Any remaining label collision gets a
  // positional suffix.
  std::vector<int> e4_orbits, a4_reps;
  for (int o = 0; o < orbits.count(); ++o) {
    if (labels[size_t(o)] == "E4") e4_orbits.push_back(o);
    if (labels[size_t(o)] == "A4")
      for (int id = 0; id < lattice.count(); ++id)
        if (orbits.orbit_of[size_t(id)] == o) a4_reps.push_back(id);
  }
  if (e4_orbits.size() == 2 && !a4_reps.empty()) {
    auto inside_a4 = [&](int o) {
      const Bitset& m = lattice.at(orbits.reps[size_t(o)]).mask;
      for (int id : a4_reps)
        if (lattice.at(id).mask.contains(m)) return true;
      return false;
    };
    bool in0 = inside_a4(e4_orbits[0]), in1 = inside_a4(e4_orbits[1]);
    if (in0 != in1) {
      labels[size_t(in0 ? e4_orbits[0] : e4_orbits[1])] = "E4+";
      labels[size_t(in0 ? e4_orbits[1] : e4_orbits[0])] = "E4-";
    }
  }

  std::map<std::string, std::vector<int>> by_label;
  for (int o = 0; o < orbits.count(); ++o)
    by_label[labels[size_t(o)]].push_back(o);
  for (const auto& [label, members] : by_label)
    if (members.size() > 1)
      for (size_t i = 0; i < members.size(); ++i)
        labels[size_t(members[i])] = label + "#" + std::to_string(i + 1);
  return labels;
}

} // namespace detail

} // namespace loopgen
