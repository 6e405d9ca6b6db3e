#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <vector>

#include "abelian/gf.hpp"

using namespace abelian;

namespace {

// all field elements in counting order
std::vector<GField::El> all_elements(const GField& f) {
  std::vector<GField::El> out;
  GField::El c(f.degree(), 0);
  out.push_back(c);
  for (;;) {
    std::size_t i = 0;
    for (; i < c.size(); ++i) {
      if (++c[i] < f.q()) break;
      c[i] = 0;
    }
    if (i == c.size()) break;
    out.push_back(c);
  }
  return out;
}

}  // namespace

TEST_CASE("multiplicative order of residues", "[gf]") {
  CHECK(num::multiplicative_order(2, 7) == 3);
  CHECK(num::multiplicative_order(3, 7) == 6);
  CHECK(num::multiplicative_order(2, 9) == 6);
  CHECK(num::multiplicative_order(7, 9) == 3);
  CHECK(num::multiplicative_order(3, 8) == 2);
  CHECK(num::multiplicative_order(5, 1) == 1);
  CHECK(num::multiplicative_order(2, 27) == 18);
  CHECK_THROWS_AS(num::multiplicative_order(3, 9), ParseError);
}

TEST_CASE("modulus scan is deterministic and classical", "[gf]") {
  CHECK(GField(2, 1).modulus() == std::vector<Int>{0, 1});          // x
  CHECK(GField(2, 2).modulus() == std::vector<Int>{1, 1, 1});       // x^2+x+1
  CHECK(GField(2, 3).modulus() == std::vector<Int>{1, 1, 0, 1});    // x^3+x+1
  CHECK(GField(3, 1).modulus() == std::vector<Int>{0, 1});
  // two constructions agree coefficient for coefficient
  CHECK(GField(5, 2).modulus() == GField(5, 2).modulus());
  CHECK(GField(2, 20).modulus() == std::vector<Int>{1, 0, 0, 1, 0, 0, 0, 0, 0, 0,
                                                    0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
                                                    1});            // x^20+x^3+1
}

TEST_CASE("field axioms hold elementwise", "[gf]") {
  for (auto [q, d] : {std::pair<Int, int>{2, 3}, {3, 2}, {5, 2}}) {
    CAPTURE(q, d);
    GField f(q, d);
    auto els = all_elements(f);
    REQUIRE(Int(els.size()) == f.size());
    for (const auto& a : els) {
      CHECK(f.add(a, f.zero()) == a);
      CHECK(f.mul(a, f.one()) == a);
      CHECK(f.is_zero(f.sub(a, a)));
      if (!f.is_zero(a)) {
        CHECK(f.mul(a, f.inv(a)) == f.one());
        CHECK(f.pow(a, f.size() - 1) == f.one());  // Lagrange
      }
      for (const auto& b : els) {
        CHECK(f.add(a, b) == f.add(b, a));
        CHECK(f.mul(a, b) == f.mul(b, a));
        // Frobenius is additive in characteristic q
        CHECK(f.pow(f.add(a, b), f.q()) ==
              f.add(f.pow(a, f.q()), f.pow(b, f.q())));
      }
    }
    // associativity and distributivity over all triples
    for (const auto& a : els)
      for (const auto& b : els)
        for (const auto& c : els) {
          CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
          CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        }
  }
}

TEST_CASE("generator has full multiplicative order", "[gf]") {
  GField f(2, 3);
  auto g = f.generator();
  std::set<GField::El> powers;
  auto cur = f.one();
  for (int i = 0; i < 7; ++i) {
    powers.insert(cur);
    cur = f.mul(cur, g);
  }
  CHECK(powers.size() == 7);
  CHECK(cur == f.one());

  GField f9(3, 2);
  auto g9 = f9.generator();
  auto x = f9.one();
  int ord = 0;
  do {
    x = f9.mul(x, g9);
    ++ord;
  } while (!(x == f9.one()));
  CHECK(ord == 8);
}

TEST_CASE("roots of unity have exact order", "[gf]") {
  GField f(2, 6);  // contains ninth roots since 9 | 63
  auto zeta = f.primitive_root_of_unity(9);
  CHECK(f.pow(zeta, 9) == f.one());
  CHECK_FALSE(f.pow(zeta, 3) == f.one());
  CHECK_FALSE(f.pow(zeta, 1) == f.one());

  GField f8(2, 3);
  auto z7 = f8.primitive_root_of_unity(7);
  std::set<GField::El> ps;
  auto cur = f8.one();
  for (int i = 0; i < 7; ++i) {
    ps.insert(cur);
    cur = f8.mul(cur, z7);
  }
  CHECK(ps.size() == 7);
  CHECK_THROWS_AS(f8.primitive_root_of_unity(5), ParseError);  // 5 does not divide 7
}

TEST_CASE("field spec matches the group it serves", "[gf]") {
  auto g = AbelianGroup::parse("C9xC3");
  auto f = FieldSpec::for_group(g, 2);
  CHECK(f.q == 2);
  CHECK(f.degree == 6);  // order of 2 mod 9
  CHECK(f.modulus == GField(2, 6).modulus());

  CHECK(FieldSpec::for_group(AbelianGroup::parse("C7"), 2).degree == 3);
  CHECK(FieldSpec::for_group(AbelianGroup::parse("C8xC2"), 3).degree == 2);
  CHECK(FieldSpec::for_group(AbelianGroup::parse("C1"), 5).degree == 1);
  CHECK(FieldSpec::for_group(AbelianGroup::parse("C27xC9"), 2).degree == 18);

  CHECK_THROWS_AS(FieldSpec::for_group(AbelianGroup::parse("C4xC2"), 2), ParseError);
  CHECK_THROWS_AS(FieldSpec::for_group(g, 4), ParseError);   // not prime
  CHECK_THROWS_AS(FieldSpec::for_group(g, 6), ParseError);
  CHECK_THROWS_AS(FieldSpec::for_group(g, 3), ParseError);   // divides |G|
}

TEST_CASE("oversized extensions are refused", "[gf]") {
  CHECK_THROWS_AS(GField(2, 64), CapError);
  CHECK_NOTHROW(GField(2, 28));
}
