#pragma once

#include <string>
#include <vector>

#include "abelian/cocyclic.hpp"
#include "abelian/group.hpp"

namespace abelian {

// How a value in the derivation tree was obtained.
enum class EtaRule {
  SylowSplit,            // product over coprime Sylow components
  Homocyclic,            // all parts equal: value = tau = a+1 per factor... = parts+1
  Rank2,                 // C_{p^n} x C_{p^m}: (n-m+1)(m+1)
  PowerCollapse,         // G = H^k: same value as H
  HomocyclicFactorPeel,  // G = C_{p^a}^k x H with a = top part of H: drop copies
  BruteForce,            // exhaustive character-kernel classification
};

inline const char* to_string(EtaRule r) {
  switch (r) {
    case EtaRule::SylowSplit: return "sylow-split";
    case EtaRule::Homocyclic: return "homocyclic";
    case EtaRule::Rank2: return "rank2";
    case EtaRule::PowerCollapse: return "power-collapse";
    case EtaRule::HomocyclicFactorPeel: return "homocyclic-factor-peel";
    case EtaRule::BruteForce: return "brute-force";
  }
  return "?";
}

struct EtaDerivation {
  EtaRule rule;
  std::string group;  // primary label of the group this node evaluates
  Int value = 1;
  std::vector<EtaDerivation> children;
};

struct EtaResult {
  Int value = 1;
  EtaDerivation derivation;
};

// (n-m+1)(m+1) for C_{p^n} x C_{p^m}, n >= m >= 0.  The degenerate cases
// collapse correctly: m = 0 gives n+1 (cyclic), n = m gives n+1 (homocyclic).
inline Int eta_rank2(int n, int m) {
  if (!(n >= m && m >= 0)) throw ParseError("eta_rank2 requires n >= m >= 0");
  return Int(n - m + 1) * Int(m + 1);
}

// C_{n^l} x C_{n^s} for squarefree-or-not n with l > s >= 1: the class count
// is the product over primes p^k || n of (kl-ks+1)(ks+1).
inline Int eta_two_generator_powers(Int n, int l, int s) {
  if (n < 2 || !(l > s && s >= 1))
    throw ParseError("eta_two_generator_powers requires n >= 2, l > s >= 1");
  Int out = 1;
  for (const auto& [p, k] : num::factorize(n)) out *= eta_rank2(k * l, k * s);
  return out;
}

// Exactly when every Sylow component is homocyclic, every subgroup with
// cyclic quotient is determined up to isomorphism by its order, so the class
// count equals the divisor count of |G|.
inline bool eta_equals_tau(const AbelianGroup& g) { return g.is_homocyclic(); }

namespace detail {

inline std::string partition_label(Int p, const std::vector<int>& parts) {
  return AbelianGroup::from_primaries({{p, parts}}).primary_label();
}

inline EtaDerivation eta_component(Int p, std::vector<int> parts, const Caps& caps) {
  EtaDerivation node;
  node.group = partition_label(p, parts);
  bool homocyclic = true;
  for (int a : parts)
    if (a != parts[0]) homocyclic = false;
  if (homocyclic) {
    node.rule = EtaRule::Homocyclic;
    node.value = Int(parts[0]) + 1;
    return node;
  }
  if (parts.size() == 2) {
    node.rule = EtaRule::Rank2;
    node.value = eta_rank2(parts[0], parts[1]);
    return node;
  }
  // Multiplicity profile: parts as (value, count) pairs, descending.
  std::vector<std::pair<int, int>> profile;
  for (int a : parts) {
    if (!profile.empty() && profile.back().first == a)
      ++profile.back().second;
    else
      profile.emplace_back(a, 1);
  }
  int mult_gcd = 0;
  for (const auto& [a, c] : profile) mult_gcd = std::gcd(mult_gcd, c);
  if (mult_gcd > 1) {
    std::vector<int> reduced;
    for (const auto& [a, c] : profile)
      for (int i = 0; i < c / mult_gcd; ++i) reduced.push_back(a);
    node.rule = EtaRule::PowerCollapse;
    node.children.push_back(eta_component(p, std::move(reduced), caps));
    node.value = node.children[0].value;
    return node;
  }
  if (profile[0].second >= 2) {
    std::vector<int> peeled;
    peeled.push_back(profile[0].first);
    for (std::size_t i = 1; i < profile.size(); ++i)
      for (int c = 0; c < profile[i].second; ++c) peeled.push_back(profile[i].first);
    node.rule = EtaRule::HomocyclicFactorPeel;
    node.children.push_back(eta_component(p, std::move(peeled), caps));
    node.value = node.children[0].value;
    return node;
  }
  node.rule = EtaRule::BruteForce;
  node.value = eta_bruteforce(AbelianGroup::from_primaries({{p, parts}}), caps).eta;
  return node;
}

}  // namespace detail

inline EtaResult eta(const AbelianGroup& g, const Caps& caps = {}) {
  EtaResult res;
  const auto& pr = g.primaries();
  if (pr.empty()) {
    res.derivation = {EtaRule::Homocyclic, g.primary_label(), 1, {}};
    res.value = 1;
    return res;
  }
  if (pr.size() == 1) {
    const auto& [p, parts] = *pr.begin();
    res.derivation = detail::eta_component(p, parts, caps);
    res.value = res.derivation.value;
    return res;
  }
  EtaDerivation root;
  root.rule = EtaRule::SylowSplit;
  root.group = g.primary_label();
  root.value = 1;
  for (const auto& [p, parts] : pr) {
    root.children.push_back(detail::eta_component(p, parts, caps));
    root.value *= root.children.back().value;
  }
  res.value = root.value;
  res.derivation = std::move(root);
  return res;
}

// Recompute every node of a derivation from its stated group label and check
// the claimed values line up; returns the root value.
inline Int replay(const EtaDerivation& node, const Caps& caps = {}) {
  AbelianGroup g = AbelianGroup::parse(node.group.empty() ? "C1" : node.group);
  auto check = [&](Int got, const char* what) {
    if (got != node.value)
      throw InvariantError(std::string("derivation replay mismatch at ") +
                           node.group + " (" + what + ")");
    return got;
  };
  switch (node.rule) {
    case EtaRule::SylowSplit: {
      Int prod = 1;
      for (const auto& c : node.children) prod *= replay(c, caps);
      // children must tile the group's primes exactly
      std::map<Int, std::vector<int>> seen;
      for (const auto& c : node.children) {
        AbelianGroup cg = AbelianGroup::parse(c.group);
        for (const auto& [p, parts] : cg.primaries()) seen[p] = parts;
      }
      if (seen != g.primaries())
        throw InvariantError("derivation replay: split children do not tile the group");
      return check(prod, "sylow-split");
    }
    case EtaRule::Homocyclic: {
      if (!g.is_homocyclic())
        throw InvariantError("derivation replay: homocyclic rule on mixed group");
      return check(g.is_trivial() ? 1 : (g.primaries().begin()->second[0] + 1),
                   "homocyclic");
    }
    case EtaRule::Rank2: {
      if (g.primaries().size() != 1 || g.rank() > 2)
        throw InvariantError("derivation replay: rank2 rule misapplied");
      const auto& parts = g.primaries().begin()->second;
      int n = parts[0], m = parts.size() == 2 ? parts[1] : 0;
      return check(eta_rank2(n, m), "rank2");
    }
    case EtaRule::PowerCollapse:
    case EtaRule::HomocyclicFactorPeel: {
      if (node.children.size() != 1)
        throw InvariantError("derivation replay: reduction node needs one child");
      return check(replay(node.children[0], caps), "reduction");
    }
    case EtaRule::BruteForce:
      return check(eta_bruteforce(g, caps).eta, "brute-force");
  }
  throw InvariantError("derivation replay: unknown rule");
}

}  // namespace abelian
