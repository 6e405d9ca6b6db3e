#include <catch2/catch_amalgamated.hpp>

#include "abelian/aut.hpp"
#include "abelian/cocyclic.hpp"
#include "oracles.hpp"

using namespace abelian;

TEST_CASE("generators produce the full automorphism group of small groups") {
  for (const char* spec : {"C2 x C2", "C4 x C2", "C3 x C3", "C8", "C9", "C6",
                           "C2 x C2 x C2", "C4 x C4", "C6 x C2"}) {
    auto g = AbelianGroup::parse(spec);
    CAPTURE(spec);
    auto gens = aut_generators(g);
    REQUIRE(generated_automorphism_count(g, gens) == oracle::aut_order_bruteforce(g));
  }
}

TEST_CASE("classic automorphism group orders come out right") {
  REQUIRE(generated_automorphism_count(AbelianGroup::parse("C2 x C2"),
                                       aut_generators(AbelianGroup::parse("C2 x C2"))) == 6);
  REQUIRE(generated_automorphism_count(AbelianGroup::parse("C4 x C2"),
                                       aut_generators(AbelianGroup::parse("C4 x C2"))) == 8);
  REQUIRE(generated_automorphism_count(AbelianGroup::parse("C3 x C3"),
                                       aut_generators(AbelianGroup::parse("C3 x C3"))) == 48);
  REQUIRE(generated_automorphism_count(AbelianGroup::parse("C2 x C2 x C2"),
                                       aut_generators(AbelianGroup::parse("C2 x C2 x C2"))) == 168);
}

TEST_CASE("inverse automorphisms compose to the identity") {
  auto g = AbelianGroup::parse("C8 x C4 x C3");
  auto gens = aut_generators(g);
  GroupHom id = GroupHom::identity(g);
  for (const auto& f : gens) {
    GroupHom inv = inverse_automorphism(f);
    REQUIRE(f.compose(inv) == id);
    REQUIRE(inv.compose(f) == id);
  }
}

TEST_CASE("characteristic subgroups sit in singleton orbits") {
  auto g = AbelianGroup::parse("C9 x C3");
  auto gens = aut_generators(g);
  // 3G is characteristic: every automorphism fixes it as a set
  Subgroup threeG = Subgroup::from_generators(g, {g.make({3, 0})});
  REQUIRE(subgroup_orbit(threeG, gens).size() == 1);
}

TEST_CASE("orbits of cocyclic subgroups are exactly the isomorphism classes") {
  for (const char* spec : {"C9 x C3", "C8 x C2", "C4 x C2 x C2", "C12"}) {
    auto g = AbelianGroup::parse(spec);
    CAPTURE(spec);
    auto gens = aut_generators(g);
    auto subs = enumerate_cocyclic(g);
    auto inv = eta_bruteforce(g);
    std::set<std::string> unvisited;
    for (const auto& s : subs) unvisited.insert(s.key());
    Int orbits = 0;
    for (const auto& s : subs) {
      if (!unvisited.count(s.key())) continue;
      ++orbits;
      IsoType t = iso_type(s);
      for (const auto& member : subgroup_orbit(s, gens)) {
        REQUIRE(iso_type(member) == t);  // orbits never mix types
        unvisited.erase(member.key());
      }
    }
    REQUIRE(orbits == inv.eta);
  }
}

TEST_CASE("mapping words connect same-class subgroups and refuse different ones") {
  auto g = AbelianGroup::parse("C9 x C3");
  auto gens = aut_generators(g);
  Subgroup a = Subgroup::from_generators(g, {g.make({0, 1})});
  Subgroup b = Subgroup::from_generators(g, {g.make({3, 1})});
  Subgroup c = Subgroup::from_generators(g, {g.make({3, 0})});  // 3G, not cocyclic

  auto word = mapping_word(a, b, gens);
  REQUIRE(word.has_value());
  GroupHom f = compose_word(gens, *word, g);
  REQUIRE(f.is_automorphism());
  REQUIRE(f.image_of(a) == b);

  REQUIRE_FALSE(mapping_word(a, c, gens).has_value());
}
