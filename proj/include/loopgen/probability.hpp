#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "loopgen/core.hpp"
#include "loopgen/jump.hpp"

namespace loopgen {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

/// Multiset of element orders, canonical sorted form. Two tuples are of the
/// same type when one's order sequence is a permutation of the other's.
struct OrderType {
  std::vector<int> orders; // ascending

  static OrderType of(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return OrderType{std::move(v)};
  }

  int length() const { return int(orders.size()); }

  std::string str() const {
    std::string s;
    for (size_t i = 0; i < orders.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(orders[i]);
    }
    return s;
  }

  friend bool operator==(const OrderType& a, const OrderType& b) {
    return a.orders == b.orders;
  }
  friend bool operator<(const OrderType& a, const OrderType& b) {
    return a.orders < b.orders;
  }
};

/// One orbit-equivalence class of generating tuples: the orbit sequence the
/// nested subloops pass through, and the exact number of tuples in the class.
struct ChainClass {
  std::vector<int> orbit_seq; // m+1 orbit ids, bottom to top
  BigInt size;
};

struct GenerationReport {
  int m = 0;
  std::optional<OrderType> type;
  BigInt gen_count;
  BigRat probability; // gen_count / |C|^m
  std::vector<ChainClass> classes;
};

namespace detail {

// reach[t][o]: the top orbit is reachable from o in exactly t positive-weight
// steps. Keeps the chain enumeration output-sensitive.
inline std::vector<std::vector<char>> reach_table(const JumpTable& jt, int m,
                                                  int top_orbit) {
  int no = jt.orbit_count();
  std::vector<std::vector<char>> reach(size_t(m) + 1,
                                       std::vector<char>(size_t(no), 0));
  reach[0][size_t(top_orbit)] = 1;
  for (int t = 1; t <= m; ++t)
    for (int o = 0; o < no; ++o)
      for (int q = 0; q < no && !reach[size_t(t)][size_t(o)]; ++q)
        if (jt.nu(o, q) > 0 && reach[size_t(t) - 1][size_t(q)])
          reach[size_t(t)][size_t(o)] = 1;
  return reach;
}

inline void enumerate_chains(const JumpTable& jt, int m, int bottom, int top,
                             std::vector<ChainClass>& out) {
  auto reach = reach_table(jt, m, top);
  std::vector<int> seq{bottom};
  BigInt weight = 1;
  auto dfs = [&](auto&& self, int at, int steps_left) -> void {
    if (steps_left == 0) {
      if (at == top) out.push_back({seq, weight});
      return;
    }
    for (int q = 0; q < jt.orbit_count(); ++q) {
      int64_t w = jt.nu(at, q);
      if (w == 0 || !reach[size_t(steps_left) - 1][size_t(q)]) continue;
      seq.push_back(q);
      BigInt saved = weight;
      weight *= w;
      self(self, q, steps_left - 1);
      weight = saved;
      seq.pop_back();
    }
  };
  if (reach[size_t(m)][size_t(bottom)]) dfs(dfs, bottom, m);
  std::sort(out.begin(), out.end(), [](const ChainClass& a, const ChainClass& b) {
    return a.orbit_seq < b.orbit_seq;
  });
}

inline BigInt pow_int(int64_t base, int exp) {
  BigInt r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

} // namespace detail

/// Number of generating m-tuples and the exact generation probability,
/// computed two ways: explicit enumeration of positive-weight orbit chains
/// (whose sizes are the products of the jump constants along the chain) and
/// a path-weight dynamic program over the orbit digraph. Both must agree.
inline GenerationReport gen_count(const JumpTable& jt, int m, int loop_order,
                                  int bottom_orbit, int top_orbit) {
  if (m < 0) fail(Errc::bad_input, "tuple length must be nonnegative");
  GenerationReport rep;
  rep.m = m;
  detail::enumerate_chains(jt, m, bottom_orbit, top_orbit, rep.classes);
  for (const ChainClass& c : rep.classes) rep.gen_count += c.size;

  // independent route: DP over step counts
  size_t no = size_t(jt.orbit_count());
  std::vector<BigInt> f(no);
  f[size_t(bottom_orbit)] = 1;
  for (int t = 0; t < m; ++t) {
    std::vector<BigInt> g(no);
    for (int o = 0; o < int(no); ++o) {
      if (f[size_t(o)] == 0) continue;
      for (int q = 0; q < int(no); ++q) {
        int64_t w = jt.nu(o, q);
        if (w) g[size_t(q)] += f[size_t(o)] * w;
      }
    }
    f = std::move(g);
  }
  if (f[size_t(top_orbit)] != rep.gen_count)
    fail(Errc::verify_mismatch,
         "chain enumeration and path DP disagree on |Gen_m|");

  rep.probability = BigRat(rep.gen_count, detail::pow_int(loop_order, m));
  return rep;
}

/// Typed variant: tuples whose order multiset equals r. The dynamic program
/// runs over states (orbit, multiset of unused orders); summing over which
/// order to spend next realizes the sum over all permutations of r without
/// enumerating them.
inline GenerationReport gen_count_typed(const JumpTable& jt,
                                        const OrderType& r, int loop_order,
                                        int bottom_orbit, int top_orbit) {
  if (r.orders.empty()) fail(Errc::bad_input, "order type must be non-empty");
  for (int i : r.orders)
    if (i < 1) fail(Errc::bad_input, "orders must be positive");
  OrderType rr = OrderType::of(r.orders);
  int m = rr.length();
  GenerationReport rep;
  rep.m = m;
  rep.type = rr;

  // per-chain typed size: walk the orbit sequence, spending one order per step
  std::vector<ChainClass> untyped;
  detail::enumerate_chains(jt, m, bottom_orbit, top_orbit, untyped);
  for (ChainClass& c : untyped) {
    std::map<std::vector<int>, BigInt> state{{rr.orders, BigInt(1)}};
    for (int step = 0; step < m; ++step) {
      int from = c.orbit_seq[size_t(step)];
      int to = c.orbit_seq[size_t(step) + 1];
      std::map<std::vector<int>, BigInt> next;
      for (const auto& [left, ways] : state) {
        for (size_t k = 0; k < left.size(); ++k) {
          if (k > 0 && left[k] == left[k - 1]) continue; // distinct orders once
          int64_t w = jt.nu_i(from, left[k], to);
          if (w == 0) continue;
          std::vector<int> rest(left);
          rest.erase(rest.begin() + long(k));
          next[rest] += ways * w;
        }
      }
      state = std::move(next);
      if (state.empty()) break;
    }
    BigInt total;
    auto it = state.find(std::vector<int>{});
    if (it != state.end()) total = it->second;
    if (total > 0) {
      c.size = total;
      rep.classes.push_back(std::move(c));
      rep.gen_count += rep.classes.back().size;
    }
  }

  // independent route: DP over (orbit, unused orders) without chain
  // enumeration
  std::map<std::pair<int, std::vector<int>>, BigInt> dp{
      {{bottom_orbit, rr.orders}, BigInt(1)}};
  for (int t = 0; t < m; ++t) {
    std::map<std::pair<int, std::vector<int>>, BigInt> next;
    for (const auto& [key, ways] : dp) {
      const auto& [o, left] = key;
      for (size_t k = 0; k < left.size(); ++k) {
        if (k > 0 && left[k] == left[k - 1]) continue;
        for (int q = 0; q < jt.orbit_count(); ++q) {
          int64_t w = jt.nu_i(o, left[k], q);
          if (w == 0) continue;
          std::vector<int> rest(left);
          rest.erase(rest.begin() + long(k));
          next[{q, rest}] += ways * w;
        }
      }
    }
    dp = std::move(next);
  }
  BigInt direct;
  auto hit = dp.find({top_orbit, std::vector<int>{}});
  if (hit != dp.end()) direct = hit->second;
  if (direct != rep.gen_count)
    fail(Errc::verify_mismatch,
         "per-chain and state-space typed DP disagree on |Gen_r|");

  rep.probability = BigRat(rep.gen_count, detail::pow_int(loop_order, m));
  return rep;
}

/// All order types of length m realizable from the profile (every entry a
/// realized order), ascending.
inline std::vector<OrderType> all_order_types(const OrderProfile& profile,
                                              int m) {
  std::vector<int> orders = profile.realized_orders();
  std::vector<OrderType> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, size_t from, int left) -> void {
    if (left == 0) {
      out.push_back(OrderType{cur});
      return;
    }
    for (size_t k = from; k < orders.size(); ++k) {
      cur.push_back(orders[k]);
      self(self, k, left - 1);
      cur.pop_back();
    }
  };
  rec(rec, 0, m);
  return out;
}

/// Rounds an exact rational to three decimal places (half away from zero)
/// for display.
inline std::string decimal3(const BigRat& q) {
  BigInt num = boost::multiprecision::numerator(q);
  BigInt den = boost::multiprecision::denominator(q);
  bool neg = num < 0;
  if (neg) num = -num;
  BigInt scaled = (num * 2000 + den) / (2 * den);
  BigInt whole = scaled / 1000, frac = scaled % 1000;
  std::string fs = frac.str();
  fs.insert(fs.begin(), 3 - fs.size(), '0');
  return (neg ? "-" : "") + whole.str() + "." + fs;
}

} // namespace loopgen
