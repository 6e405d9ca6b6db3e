#include <catch2/catch_amalgamated.hpp>

#include "abelian/eta.hpp"

using namespace abelian;

namespace {

Int eta_value(const std::string& spec) {
  return eta(AbelianGroup::parse(spec)).value;
}

const EtaDerivation* find_rule(const EtaDerivation& node, EtaRule rule) {
  if (node.rule == rule) return &node;
  for (const auto& c : node.children)
    if (const auto* hit = find_rule(c, rule)) return hit;
  return nullptr;
}

}  // namespace

TEST_CASE("closed forms match exhaustive classification on a grid of 2-generator groups") {
  for (Int p : {Int(2), Int(3)})
    for (int n = 1; n <= 4; ++n)
      for (int m = 0; m <= n; ++m) {
        if (num::ipow(p, n + m) > 4096) continue;
        std::map<Int, std::vector<int>> prim;
        prim[p].push_back(n);
        if (m > 0) prim[p].push_back(m);
        auto g = AbelianGroup::from_primaries(prim);
        CAPTURE(g.label());
        REQUIRE(eta(g).value == eta_bruteforce(g).eta);
        REQUIRE(eta(g).value == eta_rank2(n, m));
      }
}

TEST_CASE("reference values for two-generator p-groups") {
  REQUIRE(eta_value("C25 x C5") == 4);        // p=5, (2-1+1)(1+1)
  REQUIRE(eta_value("C9 x C3") == 4);
  REQUIRE(eta_value("C27 x C9") == 6);        // (3-2+1)(2+1)
  REQUIRE(eta_value("C16 x C2") == 8);        // (4-1+1)(1+1)
  REQUIRE(eta_value("C5 x C5") == 2);
  REQUIRE(eta_value("C25 x C25") == 3);
  REQUIRE(eta_value("C27 x C27") == 4);
}

TEST_CASE("reference values for higher-rank 3-groups") {
  REQUIRE(eta_value("C27 x C9 x C3 x C3") == 8);
  REQUIRE(eta_value("C27 x C27 x C9 x C3") == 8);
  REQUIRE(eta_value("C27 x C9 x C3") == 8);
  REQUIRE(eta_value("C3 x C3 x C9 x C9") == 4);  // (C3xC9)^2 collapses
}

TEST_CASE("eta is multiplicative over coprime parts") {
  REQUIRE(eta_value("C12") == eta_value("C4") * eta_value("C3"));
  REQUIRE(eta_value("C36 x C6") == eta_value("C4 x C2") * eta_value("C9 x C3"));
  REQUIRE(eta_value("C36 x C6") == 16);
  REQUIRE(eta_value("C1") == 1);
  REQUIRE(eta_value("C7") == 2);
  REQUIRE(eta_value("C49") == 3);
}

TEST_CASE("replacing a group by a power of itself preserves the count") {
  auto once = eta_value("C8 x C2");
  REQUIRE(eta_value("C8 x C8 x C2 x C2") == once);
  auto d = eta(AbelianGroup::parse("C8 x C8 x C2 x C2")).derivation;
  REQUIRE(find_rule(d, EtaRule::PowerCollapse) != nullptr);
  // brute force confirms, independently of the dispatcher
  REQUIRE(eta_bruteforce(AbelianGroup::parse("C8 x C8 x C2 x C2")).eta == once);
}

TEST_CASE("extra copies of the top homocyclic factor do not change the count") {
  auto base = eta_value("C27 x C9 x C3");
  REQUIRE(eta_value("C27 x C27 x C9 x C3") == base);
  auto d = eta(AbelianGroup::parse("C27 x C27 x C9 x C3")).derivation;
  REQUIRE(find_rule(d, EtaRule::HomocyclicFactorPeel) != nullptr);
  REQUIRE(eta_bruteforce(AbelianGroup::parse("C27 x C27 x C9 x C3")).eta == base);
}

TEST_CASE("homocyclic groups realize the divisor count of the exponent") {
  for (const char* spec : {"C4 x C4", "C2 x C2 x C2", "C9 x C9", "C6 x C6 x C6"}) {
    auto g = AbelianGroup::parse(spec);
    REQUIRE(eta_equals_tau(g));
    REQUIRE(eta(g).value == g.tau());
  }
  auto mixed = AbelianGroup::parse("C4 x C2");
  REQUIRE_FALSE(eta_equals_tau(mixed));
  REQUIRE(eta(mixed).value > mixed.tau());  // strictly above tau once mixed
}

TEST_CASE("mixed Sylow components exceed tau exactly when one is not homocyclic") {
  for (const char* spec : {"C8", "C12", "C4 x C2", "C36 x C6", "C9 x C3 x C4"}) {
    auto g = AbelianGroup::parse(spec);
    bool all_homo = g.is_homocyclic();
    REQUIRE(eta_equals_tau(g) == all_homo);
    if (all_homo)
      REQUIRE(eta(g).value == g.tau());
    else
      REQUIRE(eta(g).value > g.tau());
  }
}

TEST_CASE("two-generator corollary over a composite base") {
  // n = 6 squarefree: per prime (l-s+1)(s+1) = 4, so 16 in total
  REQUIRE(eta_two_generator_powers(6, 2, 1) == 16);
  REQUIRE(eta_value("C36 x C6") == eta_two_generator_powers(6, 2, 1));
  // n = 12 = 2^2 * 3: the 2-part picks up k = 2: (2l-2s+1)(2s+1) = 9
  REQUIRE(eta_two_generator_powers(12, 2, 1) == 9 * 4);
  REQUIRE(eta_value("C144 x C12") == eta_two_generator_powers(12, 2, 1));
}

TEST_CASE("derivation trees replay to the same value") {
  for (const char* spec :
       {"C1", "C8", "C9 x C3", "C36 x C6", "C8 x C8 x C2 x C2", "C27 x C9 x C3"}) {
    auto r = eta(AbelianGroup::parse(spec));
    REQUIRE(replay(r.derivation) == r.value);
  }
}

TEST_CASE("tampered derivations are rejected on replay") {
  auto r = eta(AbelianGroup::parse("C36 x C6"));
  auto bad = r.derivation;
  bad.value += 1;
  REQUIRE_THROWS_AS(replay(bad), InvariantError);
  auto bad2 = r.derivation;
  bad2.children.pop_back();
  REQUIRE_THROWS_AS(replay(bad2), InvariantError);
}

TEST_CASE("rule selection is stable for the documented shapes") {
  REQUIRE(eta(AbelianGroup::parse("C4 x C4")).derivation.rule == EtaRule::Homocyclic);
  REQUIRE(eta(AbelianGroup::parse("C8 x C2")).derivation.rule == EtaRule::Rank2);
  REQUIRE(eta(AbelianGroup::parse("C27 x C9 x C3 x C3")).derivation.rule ==
          EtaRule::BruteForce);
  REQUIRE(eta(AbelianGroup::parse("C12")).derivation.rule == EtaRule::SylowSplit);
}
