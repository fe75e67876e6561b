#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>

#include "helpers.hpp"
#include "osl/oracle.hpp"
#include "osl/product.hpp"

using namespace osl;
using testutil::chain_carrier;
using testutil::diamond_spec;

TEST_CASE("carrier size is the product of component sizes") {
  CHECK(chain_carrier(3, 3).size() == 9);
  CHECK(chain_carrier(4, 4).size() == 16);
  auto unit = chain_carrier(1, 1);
  CHECK(unit.size() == 1);
  CHECK(unit.bottom() == unit.top());
}

TEST_CASE("node ids pack row-major by observer") {
  auto c = chain_carrier(3, 4);
  CHECK(c.pack(2, 1) == 2 * 4 + 1);
  auto [o, s] = c.unpack(9);
  CHECK(o == 2);
  CHECK(s == 1);
  CHECK_THROWS_AS(c.pack(3, 0), IndexOutOfRange);
  CHECK_THROWS_AS(c.unpack(12), IndexOutOfRange);
}

TEST_CASE("product order is componentwise") {
  auto c = chain_carrier(2, 2);
  const NodeId e00 = c.pack(0, 0), e01 = c.pack(0, 1), e10 = c.pack(1, 0);
  CHECK(c.leq(e00, e00));
  CHECK(c.leq(e00, e01));       // situation refines, observer equal
  CHECK_FALSE(c.leq(e01, e00));
  CHECK_FALSE(c.leq(e01, e10)); // crosswise pairs are incomparable
  CHECK_FALSE(c.leq(e10, e01));
}

TEST_CASE("comparability") {
  auto c = chain_carrier(2, 2);
  CHECK(c.comparable(c.pack(1, 0), c.pack(1, 0)));
  for (NodeId e = 0; e < c.size(); ++e) CHECK(c.comparable(c.bottom(), e));

  OslCarrier d(build_lattice(diamond_spec()), build_lattice(diamond_spec()));
  const int x = d.observers().index_of("x");
  const int y = d.observers().index_of("y");
  const int sbot = d.situations().bottom();
  CHECK_FALSE(d.comparable(d.pack(x, sbot), d.pack(y, sbot)));
}

TEST_CASE("join_set folds componentwise") {
  OslCarrier d(build_lattice(diamond_spec()), build_lattice(diamond_spec()));
  CHECK(d.join_set({}) == d.bottom());
  CHECK(d.meet_set({}) == d.top());

  const int x = d.observers().index_of("x");
  const int y = d.observers().index_of("y");
  const int s1 = d.situations().index_of("x");
  const int s2 = d.situations().index_of("y");
  const NodeId a = d.pack(x, s1), b = d.pack(y, s2);
  const NodeId pair[2] = {a, b};
  CHECK(d.join_set(pair) ==
        d.pack(d.observers().join(x, y), d.situations().join(s1, s2)));
  CHECK(d.meet_set(pair) ==
        d.pack(d.observers().meet(x, y), d.situations().meet(s1, s2)));
}

TEST_CASE("join_set and meet_set match bound enumeration on random carriers") {
  std::mt19937_64 rng(41);
  for (int round = 0; round < 10; ++round) {
    auto c = testutil::random_carrier(rng, 100);
    std::uniform_int_distribution<int> len(0, 4);
    std::uniform_int_distribution<NodeId> pick(0, c.size() - 1);
    for (int t = 0; t < 100; ++t) {
      std::vector<NodeId> s;
      const int k = len(rng);
      for (int i = 0; i < k; ++i) s.push_back(pick(rng));
      auto brute = oracle::carrier_bounds_brute(c, s);
      REQUIRE(brute.lub.has_value());
      REQUIRE(brute.glb.has_value());
      CHECK(c.join_set(s) == *brute.lub);
      CHECK(c.meet_set(s) == *brute.glb);
    }
  }
}

TEST_CASE("upward closure endpoints") {
  auto c = chain_carrier(2, 2);
  CHECK(c.upward_closure(c.top()) == std::vector<NodeId>{c.top()});
  CHECK(c.upward_closure(c.bottom()).size() == 4);
  CHECK_THROWS_AS(c.upward_closure(4), IndexOutOfRange);
}

TEST_CASE("upward closure is the product of component up-sets, ascending") {
  std::mt19937_64 rng(43);
  for (int round = 0; round < 8; ++round) {
    auto c = testutil::random_carrier(rng, 1000);
    for (NodeId e = 0; e < c.size(); ++e) {
      auto up = c.upward_closure(e);
      CHECK(std::is_sorted(up.begin(), up.end()));
      auto [o, s] = c.unpack(e);
      CHECK(static_cast<int>(up.size()) ==
            c.observers().up_count(o) * c.situations().up_count(s));
      CHECK(static_cast<int>(up.size()) == c.upward_closure_size(e));
      // every member is above e, and membership matches leq exactly
      std::set<NodeId> members(up.begin(), up.end());
      for (NodeId x = 0; x < c.size(); ++x)
        CHECK(members.count(x) == static_cast<std::size_t>(c.leq(e, x)));
    }
  }
}

TEST_CASE("closures shrink monotonically along the order") {
  std::mt19937_64 rng(47);
  auto c = testutil::random_carrier(rng, 80);
  for (NodeId e1 = 0; e1 < c.size(); ++e1) {
    for (NodeId e2 = 0; e2 < c.size(); ++e2) {
      if (!c.leq(e1, e2)) continue;
      auto up1 = c.upward_closure(e1);
      auto up2 = c.upward_closure(e2);
      CHECK(std::includes(up1.begin(), up1.end(), up2.begin(), up2.end()));
    }
  }
}

TEST_CASE("node labels render component labels") {
  auto c = chain_carrier(2, 2);
  CHECK(c.node_label(c.pack(1, 0)) == "(o1, s0)");
}
