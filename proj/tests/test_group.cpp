#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "abelian/group.hpp"

using namespace abelian;

TEST_CASE("parsing accepts cyclic-factor and primary forms") {
  auto a = AbelianGroup::parse("C12 x C6");
  auto b = AbelianGroup::parse("2^[2,1] x 3^[1,1]");
  REQUIRE(a == b);
  REQUIRE(a.order() == 72);
  REQUIRE(a.exponent() == 12);
  REQUIRE(a.rank() == 4);
  REQUIRE(a.generator_orders() == std::vector<Int>{4, 2, 3, 3});
  REQUIRE(a.label() == "C4xC2xC3xC3");
  REQUIRE(a.primary_label() == "2^[2,1] x 3^[1,1]");
}

TEST_CASE("parsing sorts exponents and merges repeated primes") {
  auto g = AbelianGroup::parse("3^[1,2] x C3");
  REQUIRE(g.primaries().at(3) == std::vector<int>{2, 1, 1});
  REQUIRE(AbelianGroup::parse("c8XC2") == AbelianGroup::parse("2^[3,1]"));
}

TEST_CASE("trivial group round trips") {
  auto t = AbelianGroup::parse("C1");
  REQUIRE(t.is_trivial());
  REQUIRE(t.order() == 1);
  REQUIRE(t.exponent() == 1);
  REQUIRE(AbelianGroup::parse(t.label()) == t);
  REQUIRE(AbelianGroup::parse(t.primary_label()) == t);
  // composite primary labels parse back too
  auto g = AbelianGroup::parse("C36xC6");
  REQUIRE(AbelianGroup::parse(g.primary_label()) == g);
}

TEST_CASE("parse rejects malformed specs") {
  REQUIRE_THROWS_AS(AbelianGroup::parse(""), ParseError);
  REQUIRE_THROWS_AS(AbelianGroup::parse("C0"), ParseError);
  REQUIRE_THROWS_AS(AbelianGroup::parse("D4"), ParseError);
  REQUIRE_THROWS_AS(AbelianGroup::parse("4^[1]"), ParseError);
  REQUIRE_THROWS_AS(AbelianGroup::parse("2^[]"), ParseError);
  REQUIRE_THROWS_AS(AbelianGroup::parse("2^[0]"), ParseError);
  REQUIRE_THROWS_AS(AbelianGroup::parse("C4 x"), ParseError);
}

TEST_CASE("element arithmetic wraps componentwise") {
  auto g = AbelianGroup::parse("C4 x C3");
  Element a = g.make({3, 2});
  Element b = g.make({2, 2});
  REQUIRE(g.add(a, b) == g.make({1, 1}));
  REQUIRE(g.sub(a, a) == g.zero());
  REQUIRE(g.neg(a) == g.make({1, 1}));
  REQUIRE(g.mul(-5, a) == g.mul(7, a));
  REQUIRE(g.make({7, -1}) == g.make({3, 2}));
}

TEST_CASE("element orders agree with direct iteration") {
  auto g = AbelianGroup::parse("C8 x C12");
  g.for_each_element([&](const Element& e) {
    Int n = 1;
    Element acc = e;
    while (acc != g.zero()) {
      acc = g.add(acc, e);
      ++n;
    }
    REQUIRE(g.element_order(e) == n);
  });
}

TEST_CASE("iteration visits every element exactly once") {
  auto g = AbelianGroup::parse("C4 x C2 x C3");
  std::set<std::vector<Int>> seen;
  g.for_each_element([&](const Element& e) { REQUIRE(seen.insert(e.c).second); });
  REQUIRE(Int(seen.size()) == g.order());
}

TEST_CASE("homocyclic detection and divisor count of the exponent") {
  REQUIRE(AbelianGroup::parse("C4xC4x C9x C9").is_homocyclic());
  REQUIRE_FALSE(AbelianGroup::parse("C4xC2").is_homocyclic());
  REQUIRE(AbelianGroup::parse("C12").tau() == 6);
  REQUIRE(AbelianGroup::parse("C4xC4").tau() == 3);
  REQUIRE(AbelianGroup::parse("C1").tau() == 1);
}

TEST_CASE("sylow components slice coordinates in prime order") {
  auto g = AbelianGroup::parse("C12 x C18");
  auto comps = g.sylow_components();
  REQUIRE(comps.size() == 2);
  REQUIRE(comps.at(2) == AbelianGroup::parse("C4xC2"));
  REQUIRE(comps.at(3) == AbelianGroup::parse("C9xC3"));
  REQUIRE(g.coord_range(2) == std::pair<std::size_t, std::size_t>{0, 2});
  REQUIRE(g.coord_range(3) == std::pair<std::size_t, std::size_t>{2, 4});
}
