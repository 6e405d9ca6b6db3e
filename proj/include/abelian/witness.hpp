#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "abelian/basis.hpp"
#include "abelian/hom.hpp"
#include "abelian/isotype.hpp"
#include "abelian/subgroup.hpp"

namespace abelian {

// Inputs whose quotient is not cyclic.
class NotCocyclicError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A pair of subgroups that are not isomorphic cannot be matched by any
// automorphism of the ambient group.
class TypeMismatchError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// True iff x lies outside the Frattini subgroup pH, i.e. x belongs to some
// minimal generating set of the p-group h.
inline bool is_frattini_generator(const Subgroup& h, const Element& x) {
  if (!h.contains(x)) throw ParseError("element is outside the subgroup");
  auto factors = num::factorize(h.order());
  if (factors.size() > 1) throw ParseError("Frattini test requires a p-group");
  if (factors.empty()) return false;  // trivial group has no generators
  return !h.scaled(factors.begin()->first).contains(x);
}

namespace detail {

// Lexicographic scan of the ambient group for the first element passing
// `pred`.  The groups this runs on are capped well below enumeration size.
template <class Pred>
inline std::optional<Element> lex_first(const AbelianGroup& g, Pred&& pred) {
  std::optional<Element> hit;
  Element e = g.zero();
  do {
    if (pred(e)) { hit = e; break; }
  } while (g.advance(e));
  return hit;
}

}  // namespace detail

// The lexicographically smallest a with x in <a> and a outside pH, obtained
// by dividing x by p as many times as the subgroup allows.  x must be a
// non-generator (inside pH); the identity lifts to the smallest generator.
inline Element lift_to_generator(const Subgroup& h, const Element& x) {
  if (!h.contains(x)) throw ParseError("element is outside the subgroup");
  auto factors = num::factorize(h.order());
  if (factors.size() != 1) throw ParseError("lift requires a nontrivial p-group");
  Int p = factors.begin()->first;
  if (is_frattini_generator(h, x))
    throw ParseError("element is already a generator");
  const AbelianGroup& g = h.ambient();
  std::optional<Element> a;
  if (x == g.zero()) {
    Subgroup ph = h.scaled(p);
    a = detail::lex_first(g, [&](const Element& e) {
      return h.contains(e) && !ph.contains(e);
    });
  } else {
    int t = height_in(h, x, p);
    Int pt = num::ipow(p, t);
    a = detail::lex_first(g, [&](const Element& e) {
      return h.contains(e) && g.mul(pt, e) == x;
    });
  }
  if (!a) throw InvariantError("lift_to_generator: no divisor found");
  if (!is_frattini_generator(h, *a))
    throw InvariantError("lift_to_generator: lift landed in the Frattini subgroup");
  return *a;
}

// Order of the coset e + H inside G/H: the least j >= 1 with j*e in H.
inline Int coset_order(const Subgroup& h, const Element& e) {
  const AbelianGroup& g = h.ambient();
  Int ord = g.element_order(e);
  // the coset order divides ord(e); test divisors in increasing order
  for (Int j = 1; j <= ord; ++j)
    if (ord % j == 0 && h.contains(g.mul(j, e))) return j;
  throw InvariantError("coset order not found");
}

/**
 * The canonical cyclic-coset generator for a cocyclic subgroup H of a
 * p-group: the lexicographically smallest x of maximal order p^n whose coset
 * generates G/H, together with m where |G/H| = p^m.  Such an x exists for
 * every cocyclic H; its absence is an internal invariant failure.
 */
inline std::pair<Element, int> find_cyclic_coset_generator(const AbelianGroup& gp,
                                                           const Subgroup& h) {
  if (!gp.is_p_group()) throw ParseError("ambient group must be a p-group");
  if (h.ambient() != gp) throw ParseError("subgroup has a different ambient group");
  if (!is_cocyclic(h))
    throw NotCocyclicError("quotient by " + iso_type(h).label() + " is not cyclic");
  Int index = gp.order() / h.order();
  int m = gp.is_trivial() ? 0 : num::valuation(index, gp.primaries().begin()->first);
  Int target_order = gp.exponent();
  auto x = detail::lex_first(gp, [&](const Element& e) {
    return gp.element_order(e) == target_order && coset_order(h, e) == index;
  });
  if (!x) throw InvariantError("no maximal-order coset generator exists");
  return {*x, m};
}

/**
 * An isomorphism between two subgroups of a common ambient group, stored as
 * the images of the domain's structured basis.  Because structured
 * coordinates are additive, `apply` is automatically a homomorphism; the
 * constructor verifies it is an isomorphism onto the codomain.
 */
class SubgroupIso {
public:
  SubgroupIso(const Subgroup& domain, const Subgroup& codomain,
              std::vector<Element> images)
      : basis_(domain), codomain_(codomain), images_(std::move(images)) {
    if (images_.size() != basis_.size())
      throw ParseError("iso: one image per basis generator required");
    const AbelianGroup& g = domain.ambient();
    for (std::size_t j = 0; j < images_.size(); ++j)
      if (g.element_order(images_[j]) != basis_.orders()[j])
        throw TypeMismatchError("iso: image order mismatch at basis slot " +
                                std::to_string(j));
    if (!(Subgroup::from_generators(g, images_) == codomain_))
      throw InvariantError("iso: images do not span the codomain");
  }

  const Subgroup& domain() const { return basis_.subgroup(); }
  const Subgroup& codomain() const { return codomain_; }
  const StructuredBasis& domain_basis() const { return basis_; }
  const std::vector<Element>& images() const { return images_; }

  Element apply(const Element& h) const {
    const AbelianGroup& g = domain().ambient();
    auto c = basis_.coords(h);
    Element acc = g.zero();
    for (std::size_t j = 0; j < images_.size(); ++j)
      acc = g.add(acc, g.mul(c[j], images_[j]));
    return acc;
  }

private:
  StructuredBasis basis_;
  Subgroup codomain_;
  std::vector<Element> images_;
};

namespace detail {

// One basis slot of an adapted presentation: u picks up p^v * (basis element
// of order p^lambda) from this slot.
struct AdaptedSlot {
  int v;
  int lambda;
  std::size_t index;
};

struct AdaptedBasis {
  std::vector<Element> basis;      // indexed like the structured basis
  std::vector<int> lambda;         // order exponents per index
  std::vector<AdaptedSlot> blocks; // support of u, v strictly increasing
};

/**
 * Rewrites the structured basis of h so that u becomes a sum of p-power
 * multiples of independent basis elements with strictly increasing
 * valuation v and strictly increasing co-valuation lambda - v.  Every
 * rewriting step is an automorphism of h (unit scaling, or absorbing slot j
 * into slot i when ord(p^{v_j - v_i} b_j) divides ord(b_i)), so the result
 * is again a basis and the block pattern [(v, lambda)] is an invariant of u
 * under automorphisms of h.
 */
inline AdaptedBasis adapt_basis(const StructuredBasis& sb, const Element& u, Int p) {
  const AbelianGroup& g = sb.subgroup().ambient();
  AdaptedBasis out;
  out.basis = sb.generators();
  for (Int o : sb.orders()) out.lambda.push_back(num::valuation(o, p));
  auto x = sb.coords(u);
  std::vector<bool> in_support(sb.size(), false);
  std::vector<int> v(sb.size(), 0);
  for (std::size_t j = 0; j < sb.size(); ++j) {
    if (x[j] == 0) continue;
    in_support[j] = true;
    v[j] = num::valuation(x[j], p);
    Int unit = x[j] / num::ipow(p, v[j]);
    // scale the slot so u's coefficient there is exactly p^{v_j}
    out.basis[j] = g.mul(unit, out.basis[j]);
  }
  for (;;) {
    bool absorbed = false;
    for (std::size_t i = 0; i < sb.size() && !absorbed; ++i)
      for (std::size_t j = 0; j < sb.size() && !absorbed; ++j) {
        if (i == j || !in_support[i] || !in_support[j]) continue;
        if (v[i] <= v[j] && out.lambda[i] - v[i] >= out.lambda[j] - v[j]) {
          Int c = num::ipow(p, v[j] - v[i]);
          out.basis[i] = g.add(out.basis[i], g.mul(c, out.basis[j]));
          in_support[j] = false;
          absorbed = true;
        }
      }
    if (!absorbed) break;
  }
  for (std::size_t j = 0; j < sb.size(); ++j)
    if (in_support[j]) out.blocks.push_back({v[j], out.lambda[j], j});
  std::sort(out.blocks.begin(), out.blocks.end(),
            [](const AdaptedSlot& a, const AdaptedSlot& b) { return a.v < b.v; });
  for (std::size_t b = 0; b + 1 < out.blocks.size(); ++b) {
    bool inc = out.blocks[b].v < out.blocks[b + 1].v &&
               out.blocks[b].lambda - out.blocks[b].v <
                   out.blocks[b + 1].lambda - out.blocks[b + 1].v;
    if (!inc) throw InvariantError("adapted basis: block pattern not strict");
  }
  // the rewritten slots must still assemble u
  Element acc = g.zero();
  for (const auto& blk : out.blocks)
    acc = g.add(acc, g.mul(num::ipow(p, blk.v), out.basis[blk.index]));
  if (!(acc == u)) throw InvariantError("adapted basis: u no longer assembles");
  return out;
}

// Coordinates of each target over an independent generating set, found by a
// single walk over all coefficient tuples.  Doubles as an independence
// check: the walk must visit |H| distinct elements to find everything.
inline std::vector<std::vector<Int>> coords_over(
    const AbelianGroup& g, const std::vector<Element>& basis,
    const std::vector<int>& lambda, Int p, const std::vector<Element>& targets) {
  std::vector<Int> orders;
  for (int l : lambda) orders.push_back(num::ipow(p, l));
  std::map<Element, std::vector<Int>> want;
  for (const auto& t : targets) want.emplace(t, std::vector<Int>{});
  std::size_t found = 0;
  std::vector<Int> digits(basis.size(), 0);
  Element cur = g.zero();
  for (;;) {
    auto it = want.find(cur);
    if (it != want.end() && it->second.empty()) {
      it->second = digits;
      if (++found == want.size()) break;
    }
    std::size_t j = basis.size();
    while (j-- > 0) {
      cur = g.add(cur, basis[j]);
      if (++digits[j] < orders[j]) break;
      digits[j] = 0;
    }
    if (j == std::size_t(-1)) break;
  }
  if (found != want.size())
    throw InvariantError("coordinate walk: basis does not reach every target");
  std::vector<std::vector<Int>> out;
  for (const auto& t : targets) {
    auto c = want.at(t);
    if (c.empty() && !(t == g.zero()))
      throw InvariantError("coordinate walk: target missed");
    if (c.empty()) c.assign(basis.size(), 0);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace detail

/**
 * An isomorphism theta: H -> K with theta(u) = w, where u and w are the
 * p^m-th multiples of the cyclic coset generators of H and K.  Exists
 * whenever the adapted block patterns of (H, u) and (K, w) coincide — and
 * they always do for isomorphic cocyclic subgroups sharing an ambient
 * p-group; a mismatch is surfaced as TypeMismatchError, never patched over.
 */
inline SubgroupIso build_theta(const AbelianGroup& gp, const Subgroup& h,
                               const Subgroup& k, const Element& x,
                               const Element& y, int m) {
  if (!(iso_type(h) == iso_type(k)))
    throw TypeMismatchError("subgroups are not isomorphic: " + iso_type(h).label() +
                            " vs " + iso_type(k).label());
  Int p = gp.is_trivial() ? 2 : gp.primaries().begin()->first;
  Int pm = num::ipow(p, m);
  Element u = gp.mul(pm, x), w = gp.mul(pm, y);
  if (!h.contains(u) || !k.contains(w))
    throw ParseError("coset generators do not fit the subgroups");

  StructuredBasis bh(h), bk(k);
  if (u == gp.zero()) {
    if (!(w == gp.zero()))
      throw InvariantError("theta: only one side pins the identity");
    // any order-preserving basis match will do; the canonical one is used
    SubgroupIso theta(h, k, bk.generators());
    return theta;
  }
  auto ah = detail::adapt_basis(bh, u, p);
  auto ak = detail::adapt_basis(bk, w, p);
  if (ah.blocks.size() != ak.blocks.size())
    throw TypeMismatchError("theta: adapted block patterns differ in length");
  for (std::size_t b = 0; b < ah.blocks.size(); ++b)
    if (ah.blocks[b].v != ak.blocks[b].v || ah.blocks[b].lambda != ak.blocks[b].lambda)
      throw TypeMismatchError("theta: adapted block patterns differ");

  // Pair adapted slots: matched blocks first, then complements within each
  // run of equal order, in index order.  Orders chains are equal, so runs
  // line up index-for-index.
  std::vector<std::size_t> sigma(bh.size(), std::size_t(-1));
  std::vector<bool> used(bk.size(), false);
  for (std::size_t b = 0; b < ah.blocks.size(); ++b) {
    sigma[ah.blocks[b].index] = ak.blocks[b].index;
    used[ak.blocks[b].index] = true;
  }
  for (std::size_t i = 0, j = 0; i < bh.size(); ++i) {
    if (sigma[i] != std::size_t(-1)) continue;
    while (j < bk.size() && (used[j] || bk.orders()[j] != bh.orders()[i])) ++j;
    if (j == bk.size())
      throw InvariantError("theta: complement orders fail to match");
    sigma[i] = j;
    used[j] = true;
  }

  // theta(adapted_h[i]) = adapted_k[sigma(i)]; convert to images of the
  // canonical structured basis via adapted coordinates of the canonical
  // generators.
  auto coords = detail::coords_over(gp, ah.basis, ah.lambda, p, bh.generators());
  std::vector<Element> images;
  for (std::size_t jgen = 0; jgen < bh.size(); ++jgen) {
    Element acc = gp.zero();
    for (std::size_t i = 0; i < bh.size(); ++i)
      acc = gp.add(acc, gp.mul(coords[jgen][i], ak.basis[sigma[i]]));
    images.push_back(acc);
  }
  SubgroupIso theta(h, k, images);
  if (!(theta.apply(u) == w))
    throw InvariantError("theta: pinning theta(u) = w failed");
  return theta;
}

struct WitnessComponent {
  Int prime = 0;
  Element x, y;     // cyclic coset generators, in ambient coordinates
  int m = 0;        // |G_p / H_p| = p^m
};

/**
 * Certificate that H and K are carried onto each other by an automorphism of
 * G: phi is the automorphism, theta its restriction to H, and per Sylow
 * component the coset generators x, y with exponent m that steered the
 * construction.  All invariants are re-verified after assembly.
 */
struct WitnessReport {
  AbelianGroup group;
  Subgroup h, k;
  GroupHom phi;
  SubgroupIso theta;
  std::vector<WitnessComponent> components;
  Int quotient_order = 1;

  // p-group convenience accessors
  const Element& x() const { return single().x; }
  const Element& y() const { return single().y; }
  int m_exponent() const { return single().m; }

private:
  const WitnessComponent& single() const {
    if (components.size() != 1)
      throw ParseError("per-prime accessor on a multi-component witness");
    return components[0];
  }
};

namespace detail {

// phi on one Sylow component: g = i*x + h with 0 <= i < p^m decomposes every
// element; phi(g) = i*y + theta(h).
inline std::vector<Element> component_phi_images(const AbelianGroup& gp,
                                                 const Subgroup& h,
                                                 const SubgroupIso& theta,
                                                 const Element& x, const Element& y,
                                                 int m, Int p) {
  Int pm = num::ipow(p, m);
  auto decompose_apply = [&](const Element& e) {
    for (Int i = 0; i < pm; ++i) {
      Element rest = gp.sub(e, gp.mul(i, x));
      if (h.contains(rest))
        return gp.add(gp.mul(i, y), theta.apply(rest));
    }
    throw InvariantError("phi: element escapes the coset decomposition");
  };
  std::vector<Element> images;
  for (std::size_t t = 0; t < gp.rank(); ++t) images.push_back(decompose_apply(gp.unit(t)));
  // homomorphism law including the wrap-around i1 + i2 >= p^m cases
  for (std::size_t s = 0; s < gp.rank(); ++s)
    for (std::size_t t = 0; t < gp.rank(); ++t) {
      Element lhs = decompose_apply(gp.add(gp.unit(s), gp.unit(t)));
      if (!(lhs == gp.add(images[s], images[t])))
        throw InvariantError("phi: homomorphism law fails on generators");
    }
  return images;
}

}  // namespace detail

/**
 * The central constructive statement: isomorphic cocyclic subgroups are
 * automorphic images of each other.  Builds the witness per Sylow component
 * and assembles; throws NotCocyclicError / TypeMismatchError on bad inputs
 * and InvariantError if any verification of the built maps fails.
 */
inline WitnessReport extend_to_automorphism(const AbelianGroup& g, const Subgroup& h,
                                            const Subgroup& k) {
  if (!(h.ambient() == g) || !(k.ambient() == g))
    throw ParseError("subgroups live in a different ambient group");
  if (!is_cocyclic(h) || !is_cocyclic(k))
    throw NotCocyclicError("witness construction requires cocyclic subgroups");
  if (!(iso_type(h) == iso_type(k)))
    throw TypeMismatchError("subgroups are not isomorphic: " + iso_type(h).label() +
                            " vs " + iso_type(k).label());

  auto hparts = sylow_decompose(h);
  auto kparts = sylow_decompose(k);
  std::vector<WitnessComponent> comps;
  std::vector<Element> phi_images(g.rank(), g.zero());
  for (const auto& [p, gp] : g.sylow_components()) {
    const Subgroup& hp = hparts.at(p);
    const Subgroup& kp = kparts.at(p);
    auto [x, mh] = find_cyclic_coset_generator(gp, hp);
    auto [y, mk] = find_cyclic_coset_generator(gp, kp);
    if (mh != mk) throw InvariantError("witness: quotient exponents disagree");
    SubgroupIso theta_p = build_theta(gp, hp, kp, x, y, mh);
    auto images = detail::component_phi_images(gp, hp, theta_p, x, y, mh, p);
    auto [begin, end] = g.coord_range(p);
    for (std::size_t t = begin; t < end; ++t) {
      std::vector<Int> full(g.rank(), 0);
      for (std::size_t c = begin; c < end; ++c) full[c] = images[t - begin].c[c - begin];
      phi_images[t] = g.make(full);
    }
    WitnessComponent wc;
    wc.prime = p;
    std::vector<Int> fx(g.rank(), 0), fy(g.rank(), 0);
    for (std::size_t c = begin; c < end; ++c) {
      fx[c] = x.c[c - begin];
      fy[c] = y.c[c - begin];
    }
    wc.x = g.make(fx);
    wc.y = g.make(fy);
    wc.m = mh;
    comps.push_back(std::move(wc));
  }

  GroupHom phi(g, g, phi_images);
  if (!phi.is_automorphism())
    throw InvariantError("witness: assembled map is not an automorphism");
  if (!(phi.image_of(h) == k))
    throw InvariantError("witness: assembled map does not carry H onto K");

  // theta is phi restricted to H; agreement is by construction but the order
  // and span conditions are re-verified by the SubgroupIso constructor.
  StructuredBasis bh(h);
  std::vector<Element> timg;
  for (const auto& b : bh.generators()) timg.push_back(phi.apply(b));
  SubgroupIso theta(h, k, timg);

  WitnessReport rep{g, h, k, std::move(phi), std::move(theta), std::move(comps),
                    g.order() / h.order()};
  return rep;
}

}  // namespace abelian
