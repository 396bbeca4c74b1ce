#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "loopgen/core.hpp"

namespace loopgen {

/// Cayley table of the cyclic group Z/kZ.
inline LoopTable make_cyclic(int k) {
  if (k < 1) fail(Errc::bad_input, "cyclic order must be positive");
  std::vector<std::vector<int>> grid(size_t(k), std::vector<int>(size_t(k), 0));
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) grid[size_t(a)][size_t(b)] = (a + b) % k;
  return validate_loop(grid);
}

/// Cayley table of the symmetric group on 3 letters. Elements are the six
/// permutations of {0,1,2} in lexicographic one-line order; the product p*q
/// is the composition "apply q, then p".
inline LoopTable make_s3() {
  std::array<std::array<int, 3>, 6> perms{};
  std::array<int, 3> p{0, 1, 2};
  for (int i = 0; i < 6; ++i) {
    perms[size_t(i)] = {p[0], p[1], p[2]};
    std::next_permutation(p.begin(), p.end());
  }
  auto index_of = [&](const std::array<int, 3>& q) {
    for (int i = 0; i < 6; ++i)
      if (perms[size_t(i)] == q) return i;
    return -1;
  };
  std::vector<std::vector<int>> grid(6, std::vector<int>(6));
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      std::array<int, 3> comp{};
      for (int x = 0; x < 3; ++x)
        comp[size_t(x)] = perms[size_t(i)][size_t(perms[size_t(j)][size_t(x)])];
      grid[size_t(i)][size_t(j)] = index_of(comp);
    }
  return validate_loop(grid);
}

namespace zorn {

// Vector matrix over GF(2): scalar a, row vector b, column vector c, scalar d,
// with b and c packed as 3-bit values (bit 2 = first coordinate). An element
// is admissible when det = a*d + b.c = 1 over GF(2).

struct Mat {
  unsigned a, b, c, d;
};

inline unsigned dot(unsigned u, unsigned v) {
  return __builtin_popcount(u & v) & 1u;
}

inline unsigned cross(unsigned u, unsigned v) {
  unsigned u0 = (u >> 2) & 1, u1 = (u >> 1) & 1, u2 = u & 1;
  unsigned v0 = (v >> 2) & 1, v1 = (v >> 1) & 1, v2 = v & 1;
  unsigned w0 = (u1 & v2) ^ (u2 & v1);
  unsigned w1 = (u2 & v0) ^ (u0 & v2);
  unsigned w2 = (u0 & v1) ^ (u1 & v0);
  return (w0 << 2) | (w1 << 1) | w2;
}

inline unsigned det(const Mat& m) { return (m.a & m.d) ^ dot(m.b, m.c); }

inline Mat mul(const Mat& x, const Mat& y) {
  Mat r;
  r.a = (x.a & y.a) ^ dot(x.b, y.c);
  r.b = (x.a ? y.b : 0u) ^ (y.d ? x.b : 0u) ^ cross(x.c, y.c);
  r.c = (y.a ? x.c : 0u) ^ (x.d ? y.c : 0u) ^ cross(x.b, y.b);
  r.d = dot(x.c, y.b) ^ (x.d & y.d);
  return r;
}

// Packed 8-bit code a|b|c|d; element enumeration is ascending on this code.
inline unsigned pack(const Mat& m) {
  return (m.a << 7) | (m.b << 4) | (m.c << 1) | m.d;
}

inline Mat unpack(unsigned code) {
  return Mat{(code >> 7) & 1u, (code >> 4) & 7u, (code >> 1) & 7u, code & 1u};
}

} // namespace zorn

/// The 120-element Paige loop: unit-determinant Zorn vector matrices over
/// GF(2). The element enumeration is ascending on the packed 8-bit code, so
/// the table is identical across runs. The construction self-checks the loop
/// axioms, the Moufang identity and nonassociativity.
inline LoopTable make_paige_2() {
  std::vector<unsigned> codes;
  std::array<int, 256> index{};
  index.fill(-1);
  for (unsigned code = 0; code < 256; ++code) {
    zorn::Mat m = zorn::unpack(code);
    if (zorn::det(m) == 1) {
      index[code] = int(codes.size());
      codes.push_back(code);
    }
  }
  if (codes.size() != 120)
    fail(Errc::construction_invariant,
         "unit Zorn matrix count " + std::to_string(codes.size()) + " != 120");

  int n = int(codes.size());
  std::vector<std::vector<int>> grid(size_t(n), std::vector<int>(size_t(n), 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      zorn::Mat p = zorn::mul(zorn::unpack(codes[size_t(i)]),
                              zorn::unpack(codes[size_t(j)]));
      if (zorn::det(p) != 1)
        fail(Errc::construction_invariant, "product left the unit matrices");
      grid[size_t(i)][size_t(j)] = index[zorn::pack(p)];
    }

  LoopTable loop = validate_loop(grid);

  // Moufang identity ((x y) x) z = x (y (x z)), checked on all triples.
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int xyx = loop.mul(loop.mul(x, y), x);
      for (int z = 0; z < n; ++z)
        if (loop.mul(xyx, z) != loop.mul(x, loop.mul(y, loop.mul(x, z))))
          fail(Errc::construction_invariant, "Moufang identity failed");
    }
  if (loop.is_associative())
    fail(Errc::construction_invariant, "table is unexpectedly associative");

  return loop;
}

} // namespace loopgen
