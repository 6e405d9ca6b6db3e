#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "abelian/subgroup.hpp"
#include "oracles.hpp"

using namespace abelian;

TEST_CASE("canonical form does not depend on how the subgroup is presented") {
  auto g = AbelianGroup::parse("C8 x C4 x C3");
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Element> gens;
    int n = 1 + int(rng() % 3);
    for (int i = 0; i < n; ++i) {
      std::vector<Int> c;
      for (Int d : g.generator_orders()) c.push_back(Int(rng() % std::uint64_t(d)));
      gens.push_back(g.make(c));
    }
    Subgroup s = Subgroup::from_generators(g, gens);

    // shuffle, add redundant combinations, rebuild
    std::vector<Element> noisy = gens;
    noisy.push_back(g.add(gens[0], gens[n - 1]));
    noisy.push_back(g.mul(5, gens[0]));
    std::shuffle(noisy.begin(), noisy.end(), rng);
    REQUIRE(Subgroup::from_generators(g, noisy) == s);
  }
}

TEST_CASE("membership and order agree with the closure oracle") {
  auto g = AbelianGroup::parse("C4 x C2 x C9");
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Element> gens;
    int n = 1 + int(rng() % 2);
    for (int i = 0; i < n; ++i) {
      std::vector<Int> c;
      for (Int d : g.generator_orders()) c.push_back(Int(rng() % std::uint64_t(d)));
      gens.push_back(g.make(c));
    }
    Subgroup s = Subgroup::from_generators(g, gens);
    auto pts = oracle::closure(g, gens);
    REQUIRE(s.order() == Int(pts.size()));
    g.for_each_element([&](const Element& e) {
      REQUIRE(s.contains(e) == (pts.count(e.c) > 0));
    });
  }
}

TEST_CASE("whole and trivial subgroups behave") {
  auto g = AbelianGroup::parse("C4 x C6");
  auto w = Subgroup::whole(g);
  auto t = Subgroup::trivial(g);
  REQUIRE(w.order() == g.order());
  REQUIRE(t.order() == 1);
  REQUIRE(w.is_whole());
  REQUIRE(t.is_trivial_subgroup());
  REQUIRE(w.contains(t));
  REQUIRE_FALSE(t.contains(w));
  REQUIRE(t.contains(g.zero()));
  REQUIRE(Subgroup::from_generators(g, {}) == t);
}

TEST_CASE("basis generates the subgroup") {
  auto g = AbelianGroup::parse("C4 x C4");
  Subgroup s = Subgroup::from_generators(g, {g.make({2, 1})});
  REQUIRE(Int(oracle::closure(g, s.basis()).size()) == s.order());
  // <(2,1)> in C4xC4 is cyclic of order 4
  REQUIRE(s.order() == 4);
}

TEST_CASE("containment is antisymmetric and matches element sets") {
  auto g = AbelianGroup::parse("C8 x C2");
  Subgroup a = Subgroup::from_generators(g, {g.make({2, 0})});
  Subgroup b = Subgroup::from_generators(g, {g.make({2, 0}), g.make({0, 1})});
  REQUIRE(b.contains(a));
  REQUIRE_FALSE(a.contains(b));
  REQUIRE_FALSE(a == b);
}

TEST_CASE("scaling a subgroup multiplies every element") {
  auto g = AbelianGroup::parse("C8 x C4");
  Subgroup s = Subgroup::from_generators(g, {g.make({1, 2}), g.make({0, 2})});
  Subgroup twice = s.scaled(2);
  auto pts = oracle::subgroup_elements(s);
  oracle::ElemSet expect;
  for (const auto& v : pts) expect.insert(g.mul(2, Element{v}).c);
  REQUIRE(oracle::subgroup_elements(twice) == expect);
}

TEST_CASE("sylow decomposition splits and reassembles") {
  auto g = AbelianGroup::parse("C12 x C18");
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Element> gens;
    for (int i = 0; i < 2; ++i) {
      std::vector<Int> c;
      for (Int d : g.generator_orders()) c.push_back(Int(rng() % std::uint64_t(d)));
      gens.push_back(g.make(c));
    }
    Subgroup s = Subgroup::from_generators(g, gens);
    auto parts = sylow_decompose(s);
    Int prod = 1;
    for (const auto& [p, sp] : parts) prod *= sp.order();
    REQUIRE(prod == s.order());
    REQUIRE(assemble_subgroup(g, parts) == s);
  }
}

TEST_CASE("echelon coefficients express members exactly") {
  auto g = AbelianGroup::parse("C9 x C3");
  Subgroup s = Subgroup::from_generators(g, {g.make({3, 1})});
  auto pts = oracle::subgroup_elements(s);
  for (const auto& v : pts) {
    auto coeff = s.echelon_coefficients(Element{v});
    // recombining the coefficients over the lattice rows must reproduce v
    std::vector<Int> acc(g.rank(), 0);
    for (std::size_t i = 0; i < coeff.size(); ++i)
      for (std::size_t j = 0; j < g.rank(); ++j)
        acc[j] += coeff[i] * s.lattice()[i][j];
    REQUIRE(g.make(acc) == Element{v});
  }
  REQUIRE_THROWS_AS(s.echelon_coefficients(g.make({1, 0})), ParseError);
}
