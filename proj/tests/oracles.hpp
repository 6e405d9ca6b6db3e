#pragma once

// Slow reference implementations the tests trust blindly: everything here
// works on explicit element sets and never touches the lattice machinery it
// is used to validate.  Only run these on groups of a few hundred elements.

#include <map>
#include <set>
#include <vector>

#include "abelian/group.hpp"
#include "abelian/subgroup.hpp"

namespace oracle {

using abelian::AbelianGroup;
using abelian::Element;
using abelian::Int;

using ElemSet = std::set<std::vector<Int>>;

inline ElemSet closure(const AbelianGroup& g, const std::vector<Element>& gens) {
  ElemSet seen;
  std::vector<Element> frontier{g.zero()};
  seen.insert(g.zero().c);
  while (!frontier.empty()) {
    std::vector<Element> next;
    for (const auto& e : frontier)
      for (const auto& x : gens) {
        Element s = g.add(e, x);
        if (seen.insert(s.c).second) next.push_back(s);
      }
    frontier = std::move(next);
  }
  return seen;
}

inline ElemSet subgroup_elements(const abelian::Subgroup& s) {
  return closure(s.ambient(), s.basis());
}

// Every subgroup of g, as element sets, by closing under one-element
// extensions until nothing new appears.
inline std::vector<ElemSet> all_subgroups(const AbelianGroup& g) {
  std::set<ElemSet> known;
  known.insert(ElemSet{g.zero().c});
  std::vector<ElemSet> frontier(known.begin(), known.end());
  while (!frontier.empty()) {
    std::vector<ElemSet> next;
    for (const auto& h : frontier) {
      g.for_each_element([&](const Element& e) {
        if (h.count(e.c)) return;
        std::vector<Element> gens;
        for (const auto& v : h) gens.push_back(Element{v});
        gens.push_back(e);
        ElemSet bigger = closure(g, gens);
        if (known.insert(bigger).second) next.push_back(std::move(bigger));
      });
    }
    frontier = std::move(next);
  }
  return {known.begin(), known.end()};
}

// order -> number of elements of that order, for an element set.
inline std::map<Int, Int> order_census(const AbelianGroup& g, const ElemSet& s) {
  std::map<Int, Int> census;
  for (const auto& v : s) ++census[g.element_order(Element{v})];
  return census;
}

// Census of an abstract group given by its type, via full enumeration.
inline std::map<Int, Int> order_census(const AbelianGroup& g) {
  std::map<Int, Int> census;
  g.for_each_element([&](const Element& e) { ++census[g.element_order(e)]; });
  return census;
}

// Order of the coset rep + s in g/s: least k >= 1 with k*rep in s.
inline Int coset_order(const AbelianGroup& g, const ElemSet& s, const Element& rep) {
  Element acc = rep;
  Int k = 1;
  while (!s.count(acc.c)) {
    acc = g.add(acc, rep);
    ++k;
  }
  return k;
}

// Census of the quotient g/s: one entry per coset, computed by partitioning
// the ambient group into cosets first.
inline std::map<Int, Int> quotient_census(const AbelianGroup& g, const ElemSet& s) {
  std::set<std::vector<Int>> assigned;
  std::map<Int, Int> census;
  g.for_each_element([&](const Element& e) {
    if (assigned.count(e.c)) return;
    for (const auto& v : s) assigned.insert(g.add(e, Element{v}).c);
    ++census[coset_order(g, s, e)];
  });
  return census;
}

inline bool quotient_is_cyclic(const AbelianGroup& g, const ElemSet& s) {
  Int cosets = g.order() / Int(s.size());
  auto census = quotient_census(g, s);
  return census.rbegin()->first == cosets;
}

// |Aut(g)| by enumerating all generator-image tuples.  Feasible only when
// |g|^rank is small.
inline Int aut_order_bruteforce(const AbelianGroup& g) {
  const std::size_t k = g.rank();
  std::vector<Element> all;
  g.for_each_element([&](const Element& e) { all.push_back(e); });
  std::vector<std::size_t> pick(k, 0);
  Int count = 0;
  for (;;) {
    bool ok = true;
    std::vector<Element> images;
    for (std::size_t i = 0; i < k && ok; ++i) {
      const Element& im = all[pick[i]];
      if (g.generator_orders()[i] % g.element_order(im) != 0) ok = false;
      images.push_back(im);
    }
    if (ok && Int(closure(g, images).size()) == g.order()) ++count;
    std::size_t j = k;
    while (j-- > 0) {
      if (++pick[j] < all.size()) break;
      pick[j] = 0;
    }
    if (j == std::size_t(-1)) break;
  }
  return count;
}

}  // namespace oracle
