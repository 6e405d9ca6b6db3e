#pragma once

#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <vector>

#include "abelian/aut.hpp"
#include "abelian/cocyclic.hpp"
#include "abelian/gf.hpp"
#include "abelian/hom.hpp"

namespace abelian {

/**
 * The dual pairing <t, x> = sum_i (e/d_i) t_i x_i mod e, e = exp(G): the
 * character labeled t evaluates at x to zeta^<t,x> for a fixed primitive
 * e-th root of unity zeta.
 */
inline Int character_pairing(const AbelianGroup& g, const Element& t, const Element& x) {
  Int e = g.exponent();
  Int acc = 0;
  for (std::size_t i = 0; i < g.rank(); ++i) {
    Int w = e / g.generator_orders()[i];
    acc = (acc + w * t.c[i] % e * x.c[i]) % e;
  }
  return acc;
}

/**
 * One orbit of character labels under t -> q*t, with the common kernel of
 * its characters.  Members are sorted ascending; the first is the orbit's
 * lexicographic minimum and serves as the representative.
 */
struct CyclotomicClass {
  std::vector<Element> members;
  Subgroup kernel;

  const Element& representative() const { return members.front(); }
  int dimension() const { return int(members.size()); }
};

inline std::vector<CyclotomicClass> cyclotomic_classes(const AbelianGroup& g, Int q) {
  if (std::gcd(q, g.order()) != 1)
    throw ParseError("characteristic divides the group order");
  std::vector<CyclotomicClass> out;
  std::set<Element> seen;
  Element t = g.zero();
  do {
    if (seen.count(t)) continue;
    CyclotomicClass cls{{}, Subgroup::trivial(g)};
    Element cur = t;
    do {
      cls.members.push_back(cur);
      seen.insert(cur);
      cur = g.mul(q, cur);
    } while (!(cur == t));
    std::sort(cls.members.begin(), cls.members.end());
    cls.kernel = character_kernel(g, t);
    if (!is_cocyclic(cls.kernel))
      throw InvariantError("cyclotomic class kernel is not cocyclic");
    int expect = num::multiplicative_order(q, g.element_order(t));
    if (int(cls.members.size()) != expect)
      throw InvariantError("cyclotomic class size disagrees with the unit order");
    out.push_back(std::move(cls));
  } while (g.advance(t));
  return out;
}

/**
 * Dense arithmetic in the group algebra F_q G: coefficient vectors indexed
 * by the lexicographic rank of group elements (last coordinate fastest,
 * matching element enumeration order).
 */
class GroupAlgebra {
public:
  using Vec = std::vector<Int>;

  GroupAlgebra(AbelianGroup g, Int q) : group_(std::move(g)), q_(q) {
    if (!num::is_prime(q_)) throw ParseError("base field size must be prime");
    if (std::gcd(q_, group_.order()) != 1)
      throw ParseError("characteristic divides the group order");
    n_ = group_.order();
    strides_.assign(group_.rank(), 1);
    for (std::size_t i = group_.rank(); i-- > 1;)
      strides_[i - 1] = strides_[i] * group_.generator_orders()[i];
  }

  const AbelianGroup& group() const { return group_; }
  Int q() const { return q_; }
  Int size() const { return n_; }

  std::size_t index(const Element& e) const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < strides_.size(); ++i)
      idx += std::size_t(e.c[i] * strides_[i]);
    return idx;
  }
  Element element(std::size_t idx) const {
    std::vector<Int> c(group_.rank(), 0);
    for (std::size_t i = 0; i < strides_.size(); ++i) {
      c[i] = Int(idx) / strides_[i];
      idx %= std::size_t(strides_[i]);
    }
    return group_.make(std::move(c));
  }

  Vec zero() const { return Vec(n_, 0); }
  Vec one() const {
    Vec v(n_, 0);
    v[0] = 1;
    return v;
  }
  Vec add(const Vec& a, const Vec& b) const {
    Vec r(n_);
    for (Int i = 0; i < n_; ++i) r[i] = (a[i] + b[i]) % q_;
    return r;
  }
  Vec mul(const Vec& a, const Vec& b) const {
    Vec r(n_, 0);
    for (Int i = 0; i < n_; ++i) {
      if (a[i] == 0) continue;
      Element ei = element(std::size_t(i));
      for (Int j = 0; j < n_; ++j) {
        if (b[j] == 0) continue;
        std::size_t k = index(group_.add(ei, element(std::size_t(j))));
        r[k] = (r[k] + a[i] * b[j]) % q_;
      }
    }
    return r;
  }
  bool is_idempotent(const Vec& a) const { return mul(a, a) == a; }

  // Linear extension of a group homomorphism to the algebra.
  Vec apply_hom(const GroupHom& phi, const Vec& a) const {
    Vec r(n_, 0);
    for (Int i = 0; i < n_; ++i) {
      if (a[i] == 0) continue;
      std::size_t k = index(phi.apply(element(std::size_t(i))));
      r[k] = (r[k] + a[i]) % q_;
    }
    return r;
  }

  int weight(const Vec& a) const {
    int w = 0;
    for (Int c : a) w += (c != 0);
    return w;
  }

private:
  AbelianGroup group_;
  Int q_;
  Int n_ = 1;
  std::vector<Int> strides_;
};

/**
 * A minimal ideal of F_q G: its primitive idempotent, its dimension (the
 * size of its cyclotomic class), and the class itself, whose kernel is the
 * cocyclic subgroup the ideal corresponds to.
 */
struct MinimalCode {
  CyclotomicClass cls;
  GroupAlgebra::Vec idempotent;
  int dimension = 0;
};

/** The full semisimple decomposition of F_q G, validated on construction. */
struct CodeSystem {
  AbelianGroup group;
  FieldSpec field;
  std::vector<MinimalCode> codes;
};

/**
 * e_C = |G|^{-1} sum_g (sum_{t in C} zeta^{-<t,g>}) g.  The inner orbit sums
 * are Frobenius-stable, so every coefficient must land in the prime field;
 * that containment is asserted, not assumed.
 */
inline GroupAlgebra::Vec primitive_idempotent(const GroupAlgebra& alg, const GField& gf,
                                              const std::vector<GField::El>& zeta_pow,
                                              const CyclotomicClass& cls) {
  const AbelianGroup& g = alg.group();
  Int e = g.exponent();
  Int ninv = num::modinv(num::mod_floor(g.order(), alg.q()), alg.q());
  GroupAlgebra::Vec coeff(alg.size(), 0);
  for (Int i = 0; i < alg.size(); ++i) {
    Element x = alg.element(std::size_t(i));
    GField::El s = gf.zero();
    for (const Element& t : cls.members)
      s = gf.add(s, zeta_pow[std::size_t((e - character_pairing(g, t, x)) % e)]);
    if (!gf.is_scalar(s))
      throw InvariantError("idempotent coefficient escapes the base field");
    coeff[std::size_t(i)] = (s[0] * ninv) % alg.q();
  }
  return coeff;
}

/**
 * Builds every minimal code of F_q G and verifies the complete orthogonal
 * idempotent system: squares fix, distinct products vanish, the sum is 1.
 */
inline CodeSystem build_code_system(const AbelianGroup& g, Int q) {
  CodeSystem sys{g, FieldSpec::for_group(g, q), {}};
  GField gf = sys.field.field();
  GField::El zeta = gf.primitive_root_of_unity(g.exponent());
  std::vector<GField::El> zeta_pow(std::size_t(g.exponent()));
  zeta_pow[0] = gf.one();
  for (std::size_t k = 1; k < zeta_pow.size(); ++k)
    zeta_pow[k] = gf.mul(zeta_pow[k - 1], zeta);

  GroupAlgebra alg(g, q);
  for (auto& cls : cyclotomic_classes(g, q)) {
    MinimalCode code;
    code.idempotent = primitive_idempotent(alg, gf, zeta_pow, cls);
    code.dimension = cls.dimension();
    code.cls = std::move(cls);
    sys.codes.push_back(std::move(code));
  }

  GroupAlgebra::Vec total = alg.zero();
  for (std::size_t a = 0; a < sys.codes.size(); ++a) {
    if (!alg.is_idempotent(sys.codes[a].idempotent))
      throw InvariantError("primitive idempotent fails e*e = e");
    total = alg.add(total, sys.codes[a].idempotent);
    for (std::size_t b = a + 1; b < sys.codes.size(); ++b) {
      auto prod = alg.mul(sys.codes[a].idempotent, sys.codes[b].idempotent);
      if (prod != alg.zero())
        throw InvariantError("distinct primitive idempotents are not orthogonal");
    }
  }
  if (total != alg.one())
    throw InvariantError("primitive idempotents do not sum to 1");
  return sys;
}

struct CodeCaps {
  Int max_words = Int(1) << 20;  // q^dimension bound for exhaustive walks
  Int max_group = 128;           // |G| bound for exhaustive walks
};

/**
 * Exact weight census A_w of all q^dimension codewords of the ideal
 * generated by the idempotent.  Exhaustive by design; beyond the caps the
 * call errors instead of sampling.
 */
inline std::map<int, Int> weight_distribution(const GroupAlgebra& alg,
                                              const MinimalCode& code,
                                              CodeCaps caps = {}) {
  const AbelianGroup& g = alg.group();
  if (g.order() > caps.max_group)
    throw CapError("group too large for exhaustive weight enumeration");
  Int words = 1;
  for (int i = 0; i < code.dimension; ++i) {
    words *= alg.q();
    if (words > caps.max_words)
      throw CapError("codeword count exceeds the enumeration cap");
  }

  // F_q-basis of the ideal: row-reduce the shifts of the idempotent.
  std::vector<GroupAlgebra::Vec> basis;
  std::vector<std::size_t> pivots;
  for (Int i = 0; i < alg.size(); ++i) {
    Element shift = alg.element(std::size_t(i));
    GroupAlgebra::Vec row(std::size_t(alg.size()), 0);
    for (Int h = 0; h < alg.size(); ++h)
      row[std::size_t(h)] =
          code.idempotent[alg.index(g.sub(alg.element(std::size_t(h)), shift))];
    for (std::size_t b = 0; b < basis.size(); ++b) {
      Int c = row[pivots[b]];
      if (c == 0) continue;
      for (Int h = 0; h < alg.size(); ++h)
        row[std::size_t(h)] =
            num::mod_floor(row[std::size_t(h)] - c * basis[b][std::size_t(h)], alg.q());
    }
    std::size_t lead = 0;
    while (lead < row.size() && row[lead] == 0) ++lead;
    if (lead == row.size()) continue;
    Int inv = num::modinv(row[lead], alg.q());
    for (auto& v : row) v = (v * inv) % alg.q();
    basis.push_back(std::move(row));
    pivots.push_back(lead);
  }
  if (int(basis.size()) != code.dimension)
    throw InvariantError("ideal rank disagrees with the class size");

  // Mixed-radix walk: every digit increment (carries included) adds its
  // basis row once, because q copies of a row cancel.
  std::map<int, Int> census;
  GroupAlgebra::Vec word(std::size_t(alg.size()), 0);
  std::vector<Int> digits(basis.size(), 0);
  census[0] = 1;
  Int counted = 1;
  while (counted < words) {
    std::size_t i = 0;
    for (; i < digits.size(); ++i) {
      for (Int h = 0; h < alg.size(); ++h)
        word[std::size_t(h)] = (word[std::size_t(h)] + basis[i][std::size_t(h)]) % alg.q();
      if (++digits[i] < alg.q()) break;
      digits[i] = 0;
    }
    ++census[alg.weight(word)];
    ++counted;
  }
  if (census[0] != 1) throw InvariantError("weight census counts extra zero words");
  Int total = 0;
  for (auto [w, c] : census) total += c;
  if (total != words) throw InvariantError("weight census misses codewords");
  return census;
}

/**
 * The permutation of character labels induced by precomposition:
 * chi_{perm[t]} = chi_t o phi.  Solving (e/d_j) t'_j = <t, phi(e_j)> mod e
 * for each coordinate; solvability is a theorem and asserted.
 */
inline std::vector<std::size_t> label_action(const GroupAlgebra& alg, const GroupHom& phi) {
  const AbelianGroup& g = alg.group();
  Int e = g.exponent();
  std::vector<std::size_t> perm(std::size_t(alg.size()));
  std::vector<bool> hit(std::size_t(alg.size()), false);
  for (Int i = 0; i < alg.size(); ++i) {
    Element t = alg.element(std::size_t(i));
    std::vector<Int> tc(g.rank(), 0);
    for (std::size_t j = 0; j < g.rank(); ++j) {
      Int val = character_pairing(g, t, phi.apply(g.unit(j)));
      Int w = e / g.generator_orders()[j];
      if (val % w != 0)
        throw InvariantError("label action leaves the dual lattice");
      tc[j] = (val / w) % g.generator_orders()[j];
    }
    perm[std::size_t(i)] = alg.index(g.make(std::move(tc)));
    if (hit[perm[std::size_t(i)]])
      throw InvariantError("label action is not a permutation");
    hit[perm[std::size_t(i)]] = true;
  }
  return perm;
}

struct EquivalenceClasses {
  std::size_t count = 0;
  std::vector<std::vector<std::size_t>> orbits;  // indices into CodeSystem::codes
};

namespace detail {

// Class-level action tables: table[gen][class] = image class, verified to
// map member sets onto member sets.
inline std::vector<std::vector<std::size_t>> class_action_tables(
    const GroupAlgebra& alg, const std::vector<MinimalCode>& codes,
    const std::vector<GroupHom>& gens) {
  std::vector<std::size_t> label_to_class(std::size_t(alg.size()));
  for (std::size_t ci = 0; ci < codes.size(); ++ci)
    for (const Element& t : codes[ci].cls.members)
      label_to_class[alg.index(t)] = ci;
  std::vector<std::vector<std::size_t>> tables;
  for (const auto& phi : gens) {
    auto perm = label_action(alg, phi);
    std::vector<std::size_t> table(codes.size());
    for (std::size_t ci = 0; ci < codes.size(); ++ci) {
      std::size_t img = label_to_class[perm[alg.index(codes[ci].cls.representative())]];
      for (const Element& t : codes[ci].cls.members)
        if (label_to_class[perm[alg.index(t)]] != img)
          throw InvariantError("automorphism action tears a cyclotomic class");
      table[ci] = img;
    }
    tables.push_back(std::move(table));
  }
  return tables;
}

}  // namespace detail

/**
 * Orbits of the Aut(G)-action on minimal codes.  The orbit count is the
 * equivalence-class count that Theorem-level results predict equals the
 * cocyclic subgroup class count; callers compare the two explicitly.
 */
inline EquivalenceClasses code_equivalence_classes(const GroupAlgebra& alg,
                                                   const CodeSystem& sys,
                                                   const std::vector<GroupHom>& gens) {
  auto tables = detail::class_action_tables(alg, sys.codes, gens);
  EquivalenceClasses out;
  std::vector<bool> seen(sys.codes.size(), false);
  for (std::size_t start = 0; start < sys.codes.size(); ++start) {
    if (seen[start]) continue;
    std::vector<std::size_t> orbit;
    std::queue<std::size_t> frontier;
    frontier.push(start);
    seen[start] = true;
    while (!frontier.empty()) {
      std::size_t c = frontier.front();
      frontier.pop();
      orbit.push_back(c);
      for (const auto& table : tables)
        if (!seen[table[c]]) {
          seen[table[c]] = true;
          frontier.push(table[c]);
        }
    }
    std::sort(orbit.begin(), orbit.end());
    out.orbits.push_back(std::move(orbit));
  }
  out.count = out.orbits.size();
  return out;
}

/**
 * Searches the Aut(G)-orbit graph for an automorphism whose linear extension
 * carries code i onto code j; the witness is verified on the idempotents
 * before being returned.  Distinct dimensions short-circuit to "no".
 */
inline std::optional<GroupHom> g_equivalence_check(const GroupAlgebra& alg,
                                                   const CodeSystem& sys,
                                                   std::size_t i, std::size_t j,
                                                   const std::vector<GroupHom>& gens) {
  if (i >= sys.codes.size() || j >= sys.codes.size())
    throw ParseError("code index out of range");
  if (sys.codes[i].dimension != sys.codes[j].dimension) return std::nullopt;
  auto tables = detail::class_action_tables(alg, sys.codes, gens);

  std::map<std::size_t, std::vector<std::size_t>> word;  // class -> generator word
  word[i] = {};
  std::queue<std::size_t> frontier;
  frontier.push(i);
  while (!frontier.empty() && !word.count(j)) {
    std::size_t c = frontier.front();
    frontier.pop();
    for (std::size_t k = 0; k < tables.size(); ++k) {
      std::size_t img = tables[k][c];
      if (word.count(img)) continue;
      auto w = word[c];
      w.push_back(k);
      word[img] = std::move(w);
      frontier.push(img);
    }
  }
  if (!word.count(j)) return std::nullopt;

  GroupHom composite = GroupHom::identity(alg.group());
  for (std::size_t k : word[j]) composite = composite.compose(gens[k]);
  GroupHom witness = inverse_automorphism(composite);
  if (alg.apply_hom(witness, sys.codes[i].idempotent) != sys.codes[j].idempotent)
    throw InvariantError("equivalence witness fails on the idempotents");
  return witness;
}

}  // namespace abelian
