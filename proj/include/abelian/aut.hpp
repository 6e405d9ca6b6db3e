#pragma once

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "abelian/basis.hpp"
#include "abelian/hom.hpp"
#include "abelian/subgroup.hpp"

namespace abelian {

namespace detail {

// Multiplicative order of u modulo m (gcd(u, m) = 1).
inline Int mult_order(Int u, Int m) {
  Int acc = num::mod_floor(u, m), ord = 1;
  while (acc != 1) {
    acc = Int(__int128(acc) * u % m);
    if (++ord > m) throw InvariantError("mult_order: not a unit");
  }
  return ord;
}

// A generator of (Z/p^a)^* for odd p, by direct order testing.
inline Int primitive_root(Int p, int a) {
  Int m = num::ipow(p, a);
  Int phi = m / p * (p - 1);
  for (Int u = 2; u < m; ++u) {
    if (u % p == 0) continue;
    if (mult_order(u, m) == phi) return u;
  }
  throw InvariantError("no primitive root found");
}

}  // namespace detail

// A finite generating set of Aut(G): per coordinate a unit scaling generating
// the unit group of Z/d_i (two generators, -1 and 5, for d_i = 2^a with
// a >= 3), swaps of equal-order coordinates within a prime, and the
// transvections e_i -> e_i + p^{max(0, a_j - a_i)} e_j for i != j in the same
// prime block.  These generate the full automorphism group of each Sylow
// component, and Aut(G) is the product over components.
inline std::vector<GroupHom> aut_generators(const AbelianGroup& g) {
  std::vector<GroupHom> gens;
  const auto& d = g.generator_orders();
  auto with_image = [&](std::size_t i, const Element& im) {
    std::vector<Element> images;
    for (std::size_t k = 0; k < g.rank(); ++k)
      images.push_back(k == i ? im : g.unit(k));
    return GroupHom(g, g, images);
  };
  for (const auto& [p, parts] : g.primaries()) {
    auto [begin, end] = g.coord_range(p);
    for (std::size_t i = begin; i < end; ++i) {
      int a = parts[i - begin];
      if (p == 2) {
        if (a >= 2) gens.push_back(with_image(i, g.mul(d[i] - 1, g.unit(i))));
        if (a >= 3) gens.push_back(with_image(i, g.mul(5, g.unit(i))));
      } else {
        gens.push_back(with_image(i, g.mul(detail::primitive_root(p, a), g.unit(i))));
      }
    }
    for (std::size_t i = begin; i < end; ++i)
      for (std::size_t j = begin; j < end; ++j) {
        if (i == j) continue;
        if (d[i] == d[j] && i < j) {
          std::vector<Element> images;
          for (std::size_t k = 0; k < g.rank(); ++k)
            images.push_back(k == i ? g.unit(j) : (k == j ? g.unit(i) : g.unit(k)));
          gens.push_back(GroupHom(g, g, images));
        }
        int ai = parts[i - begin], aj = parts[j - begin];
        Int c = num::ipow(p, aj > ai ? aj - ai : 0);
        gens.push_back(with_image(i, g.add(g.unit(i), g.mul(c, g.unit(j)))));
      }
  }
  for (const auto& h : gens)
    if (!h.is_automorphism()) throw InvariantError("generator is not an automorphism");
  return gens;
}

// Inverse by iterating: automorphisms of a finite group have finite order.
inline GroupHom inverse_automorphism(const GroupHom& f) {
  if (!f.is_automorphism()) throw ParseError("inverse of a non-automorphism");
  GroupHom id = GroupHom::identity(f.source());
  GroupHom prev = id, cur = f;
  while (!(cur == id)) {
    prev = cur;
    cur = f.compose(cur);
  }
  return prev;
}

// Orbit of a subgroup under the group generated by gens, as canonical forms,
// deterministically ordered.
inline std::vector<Subgroup> subgroup_orbit(const Subgroup& s,
                                            const std::vector<GroupHom>& gens) {
  std::map<std::string, Subgroup> seen;
  std::deque<Subgroup> frontier;
  seen.emplace(s.key(), s);
  frontier.push_back(s);
  while (!frontier.empty()) {
    Subgroup cur = frontier.front();
    frontier.pop_front();
    for (const auto& f : gens) {
      Subgroup next = f.image_of(cur);
      if (seen.emplace(next.key(), next).second) frontier.push_back(next);
    }
  }
  std::vector<Subgroup> orbit;
  for (auto& [k, sub] : seen) orbit.push_back(std::move(sub));
  std::sort(orbit.begin(), orbit.end(),
            [](const Subgroup& a, const Subgroup& b) { return a.before(b); });
  return orbit;
}

// Breadth-first word search: an automorphism (as a composition of the given
// generators) carrying `from` onto `to`, or nothing if the orbits differ.
// Word entries index into gens, applied left to right.
inline std::optional<std::vector<std::size_t>> mapping_word(
    const Subgroup& from, const Subgroup& to, const std::vector<GroupHom>& gens) {
  std::map<std::string, std::vector<std::size_t>> word;
  std::deque<Subgroup> frontier;
  word.emplace(from.key(), std::vector<std::size_t>{});
  frontier.push_back(from);
  while (!frontier.empty()) {
    Subgroup cur = frontier.front();
    frontier.pop_front();
    auto base = word.at(cur.key());
    if (cur == to) return base;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      Subgroup next = gens[i].image_of(cur);
      auto w = base;
      w.push_back(i);
      if (word.emplace(next.key(), std::move(w)).second) frontier.push_back(next);
    }
  }
  return std::nullopt;
}

inline GroupHom compose_word(const std::vector<GroupHom>& gens,
                             const std::vector<std::size_t>& word,
                             const AbelianGroup& g) {
  GroupHom acc = GroupHom::identity(g);
  for (std::size_t i : word) acc = gens[i].compose(acc);
  return acc;
}

// |<gens>| by closing under composition; the element count of the generated
// automorphism group.  Only for small groups (every automorphism is stored
// as its image tuple).
inline Int generated_automorphism_count(const AbelianGroup& g,
                                        const std::vector<GroupHom>& gens) {
  std::set<std::vector<std::vector<Int>>> seen;
  auto tuple_of = [&](const GroupHom& f) {
    std::vector<std::vector<Int>> t;
    for (const auto& im : f.images()) t.push_back(im.c);
    return t;
  };
  std::deque<GroupHom> frontier;
  GroupHom id = GroupHom::identity(g);
  seen.insert(tuple_of(id));
  frontier.push_back(id);
  while (!frontier.empty()) {
    GroupHom cur = frontier.front();
    frontier.pop_front();
    for (const auto& f : gens) {
      GroupHom next = f.compose(cur);
      if (seen.insert(tuple_of(next)).second) frontier.push_back(next);
    }
  }
  return Int(seen.size());
}

}  // namespace abelian
