#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "loopgen/builtins.hpp"
#include "loopgen/subloops.hpp"

using namespace loopgen;

namespace {

std::vector<int> subloop_sizes(const SubloopLattice& lat) {
  std::vector<int> sizes;
  for (int id = 0; id < lat.count(); ++id) sizes.push_back(lat.at(id).size());
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

LoopTable relabel(const LoopTable& loop, const std::vector<int>& sigma) {
  int n = loop.size();
  std::vector<std::vector<int>> grid(size_t(n), std::vector<int>(size_t(n), 0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      grid[size_t(sigma[size_t(a)])][size_t(sigma[size_t(b)])] =
          sigma[size_t(loop.mul(a, b))];
  return validate_loop(grid);
}

} // namespace

TEST_CASE("closure of the empty seed is the trivial subloop") {
  LoopTable s3 = make_s3();
  std::vector<int> members = closure_members(s3, {});
  REQUIRE(members.size() == 1);
  CHECK(members[0] == s3.neutral());
}

TEST_CASE("closure of a transposition in S3 has two elements") {
  LoopTable s3 = make_s3();
  OrderProfile p = order_profile(s3);
  for (int x : p.by_order.at(2)) {
    int xv = x;
    CHECK(closure_members(s3, std::span<const int>(&xv, 1)).size() == 2);
  }
}

TEST_CASE("S3 lattice: six subloops, expected cardinalities") {
  SubloopLattice lat = enumerate_lattice(make_s3());
  CHECK(lat.count() == 6);
  CHECK(subloop_sizes(lat) == std::vector<int>{1, 2, 2, 2, 3, 6});
  CHECK(lat.at(lat.bottom()).size() == 1);
  CHECK(lat.at(lat.top()).size() == 6);
  // covers: e->C2 (x3), e->C3, C2->S3 (x3), C3->S3
  CHECK(lat.covers().size() == 8);
}

TEST_CASE("C4 lattice is the chain e < C2 < C4") {
  SubloopLattice lat = enumerate_lattice(make_cyclic(4));
  CHECK(lat.count() == 3);
  CHECK(subloop_sizes(lat) == std::vector<int>{1, 2, 4});
  CHECK(lat.covers().size() == 2);
}

TEST_CASE("extend is monotone and fixes interior points") {
  LoopTable s3 = make_s3();
  SubloopLattice lat = enumerate_lattice(s3);
  for (int id = 0; id < lat.count(); ++id)
    for (int x = 0; x < s3.size(); ++x) {
      const Subloop& a = lat.at(id);
      const Subloop& b = lat.at(lat.extend(id, x));
      CHECK(b.mask.contains(a.mask));
      if (a.contains(x))
        CHECK(b.id == a.id);
      else
        CHECK(b.size() > a.size());
    }
}

TEST_CASE("extend a C3 of S3 by any transposition gives the whole group") {
  LoopTable s3 = make_s3();
  SubloopLattice lat = enumerate_lattice(s3);
  OrderProfile p = order_profile(s3);
  int c3 = lat.extend(lat.bottom(), p.by_order.at(3)[0]);
  REQUIRE(lat.at(c3).size() == 3);
  for (int t : p.by_order.at(2)) CHECK(lat.extend(c3, t) == lat.top());
}

TEST_CASE("closure folds the extend cache") {
  LoopTable s3 = make_s3();
  SubloopLattice lat = enumerate_lattice(s3);
  OrderProfile p = order_profile(s3);
  std::vector<int> seed{p.by_order.at(2)[0], p.by_order.at(3)[0]};
  CHECK(lat.closure(seed) == lat.top());
  CHECK(lat.closure({}) == lat.bottom());
}

TEST_CASE("lattice shape is invariant under relabeling") {
  LoopTable s3 = make_s3();
  SubloopLattice base = enumerate_lattice(s3);

  std::mt19937 rng(20240811);
  std::vector<int> sigma{0, 1, 2, 3, 4, 5};
  for (int round = 0; round < 10; ++round) {
    std::shuffle(sigma.begin(), sigma.end(), rng);
    SubloopLattice lat = enumerate_lattice(relabel(s3, sigma));
    CHECK(lat.count() == base.count());
    CHECK(subloop_sizes(lat) == subloop_sizes(base));
    CHECK(lat.covers().size() == base.covers().size());
  }
}

TEST_CASE("registry cap fails loudly") {
  CHECK_THROWS_MATCHES(enumerate_lattice(make_s3(), 3), LoopError,
                       Catch::Matchers::Predicate<LoopError>([](const LoopError& e) {
                         return e.code() == Errc::resource_limit;
                       }));
}

TEST_CASE("trivial loop lattice") {
  SubloopLattice lat = enumerate_lattice(make_cyclic(1));
  CHECK(lat.count() == 1);
  CHECK(lat.bottom() == lat.top());
  CHECK(lat.covers().empty());
}
