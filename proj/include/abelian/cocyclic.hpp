#pragma once

#include <string>
#include <unordered_set>
#include <vector>

#include "abelian/group.hpp"
#include "abelian/isotype.hpp"
#include "abelian/subgroup.hpp"

namespace abelian {

struct Caps {
  // Largest Sylow-component order the exhaustive enumerator accepts.
  Int component = 531441;  // 3^12
  // Largest materialized product list assembled across primes.
  Int assembled = 2'000'000;
};

// Kernel of the character with label t: the solution set of the single
// congruence  sum_i (e/d_i)*t_i*x_i = 0 (mod e),  e = exp(G).  Every subgroup
// with cyclic quotient arises this way, which is what makes kernel
// enumeration a complete cocyclic enumeration.
inline Subgroup character_kernel(const AbelianGroup& g, const Element& t) {
  const std::size_t k = g.rank();
  if (k == 0) return Subgroup::whole(g);
  if (!g.valid(t)) throw ParseError("character label outside group");
  const Int e = g.exponent();
  const auto& d = g.generator_orders();
  std::vector<Int> w(k);
  for (std::size_t i = 0; i < k; ++i)
    w[i] = Int(__int128(e / d[i]) * t.c[i] % e);

  // Column chain: run the gcd of the weights into column 0, keeping every
  // other column a solution of the congruence.  Entries are reduced mod the
  // ambient order of their coordinate as we go (a shift by a relation vector,
  // harmless for span + D).
  Mat cols(k, std::vector<Int>(k, 0));
  for (std::size_t j = 0; j < k; ++j) cols[j][j] = 1;
  Int cur = w[0];
  for (std::size_t j = 1; j < k; ++j) {
    auto r = intmat::xgcd(cur, w[j]);
    if (r.g == 0) continue;  // both zero, column already a solution
    Int a = cur / r.g, b = w[j] / r.g;
    for (std::size_t row = 0; row < k; ++row) {
      __int128 c0 = __int128(r.s) * cols[0][row] + __int128(r.t) * cols[j][row];
      __int128 cj = -__int128(b) * cols[0][row] + __int128(a) * cols[j][row];
      cols[0][row] = Int(c0 % d[row]);
      cols[j][row] = Int(cj % d[row]);
    }
    cur = r.g;
  }
  Int gp = std::gcd(cur, e);
  Int scale = e / gp;
  std::vector<Element> gens;
  gens.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<Int> v = cols[j];
    if (j == 0)
      for (std::size_t row = 0; row < k; ++row)
        v[row] = Int(__int128(scale) * v[row] % d[row]);
    gens.push_back(g.make(std::move(v)));
  }
  return Subgroup::from_generators(g, gens);
}

// All cocyclic subgroups of a single Sylow component (or any group small
// enough), by sweeping every character label.  Deterministically sorted.
inline std::vector<Subgroup> enumerate_cocyclic_direct(const AbelianGroup& g,
                                                       const Caps& caps = {}) {
  if (g.order() > caps.component)
    throw CapError("cocyclic enumeration cap exceeded: |" + g.label() + "| = " +
                   std::to_string(g.order()) + " > " + std::to_string(caps.component));
  std::vector<Subgroup> out;
  std::unordered_set<std::string> seen;
  g.for_each_element([&](const Element& t) {
    Subgroup ker = character_kernel(g, t);
    if (seen.insert(ker.key()).second) out.push_back(std::move(ker));
  });
  std::sort(out.begin(), out.end(),
            [](const Subgroup& a, const Subgroup& b) { return a.before(b); });
  return out;
}

struct InventoryRow {
  IsoType type;
  Int count = 0;
  Subgroup representative;
};

struct CocyclicInventory {
  AbelianGroup group;
  Int eta = 1;               // number of isomorphism classes
  Int total_subgroups = 1;   // number of cocyclic subgroups
  std::vector<InventoryRow> rows;  // one per class, largest subgroups first
};

namespace detail {

inline std::vector<InventoryRow> classify(const AbelianGroup& g,
                                          const std::vector<Subgroup>& subs) {
  std::map<IsoType, InventoryRow> by_type;
  for (const auto& s : subs) {
    IsoType t = iso_type(s);
    auto it = by_type.find(t);
    if (it == by_type.end())
      by_type.emplace(t, InventoryRow{t, 1, s});
    else {
      ++it->second.count;
      if (s.before(it->second.representative)) it->second.representative = s;
    }
  }
  std::vector<InventoryRow> rows;
  for (auto& [t, row] : by_type) rows.push_back(std::move(row));
  std::sort(rows.begin(), rows.end(), [](const InventoryRow& a, const InventoryRow& b) {
    if (a.type.order() != b.type.order()) return a.type.order() > b.type.order();
    return a.type < b.type;
  });
  return rows;
}

}  // namespace detail

// Exhaustive count of cocyclic isomorphism classes.  Composite groups are
// handled one Sylow component at a time and the classes multiply across
// coprime components; only the per-component sweeps are exhaustive, so the
// cap applies to the largest Sylow component.
inline CocyclicInventory eta_bruteforce(const AbelianGroup& g, const Caps& caps = {}) {
  CocyclicInventory inv;
  inv.group = g;
  std::vector<std::vector<InventoryRow>> per_prime;
  for (const auto& [p, comp] : g.sylow_components()) {
    auto rows = detail::classify(comp, enumerate_cocyclic_direct(comp, caps));
    per_prime.push_back(std::move(rows));
  }
  // Cross product of the per-prime class tables: the merged type collects the
  // per-prime parts, counts multiply, representatives assemble coordinatewise.
  std::vector<InventoryRow> rows;
  std::size_t total_rows = 1;
  for (const auto& t : per_prime) total_rows *= t.size();
  rows.reserve(total_rows);
  for (std::size_t n = 0; n < total_rows; ++n) {
    std::size_t rest = n;
    std::map<Int, Subgroup> parts;
    IsoType type;
    Int count = 1;
    std::size_t pi = 0;
    for (const auto& [p, comp] : g.sylow_components()) {
      const auto& table = per_prime[pi];
      const auto& row = table[rest % table.size()];
      rest /= table.size();
      parts[p] = row.representative;
      for (const auto& [q, ps] : row.type.primaries) type.primaries[q] = ps;
      count *= row.count;
      ++pi;
    }
    rows.push_back(InventoryRow{type, count, assemble_subgroup(g, parts)});
  }
  std::sort(rows.begin(), rows.end(), [](const InventoryRow& a, const InventoryRow& b) {
    if (a.type.order() != b.type.order()) return a.type.order() > b.type.order();
    return a.type < b.type;
  });
  inv.rows = std::move(rows);
  inv.eta = Int(inv.rows.size());
  inv.total_subgroups = 0;
  for (const auto& r : inv.rows) inv.total_subgroups += r.count;
  return inv;
}

// Every cocyclic subgroup of g, assembled across Sylow components.  The
// materialized product list is guarded by caps.assembled.
inline std::vector<Subgroup> enumerate_cocyclic(const AbelianGroup& g,
                                                const Caps& caps = {}) {
  std::map<Int, std::vector<Subgroup>> per_prime;
  __int128 total = 1;
  for (const auto& [p, comp] : g.sylow_components()) {
    per_prime[p] = enumerate_cocyclic_direct(comp, caps);
    total *= Int(per_prime[p].size());
    if (total > caps.assembled)
      throw CapError("assembled cocyclic list larger than cap");
  }
  if (per_prime.empty()) return {Subgroup::whole(g)};
  std::vector<Subgroup> out;
  out.reserve(std::size_t(total));
  std::vector<std::size_t> idx(per_prime.size(), 0);
  for (;;) {
    std::map<Int, Subgroup> parts;
    std::size_t pi = 0;
    for (const auto& [p, list] : per_prime) parts[p] = list[idx[pi++]];
    out.push_back(assemble_subgroup(g, parts));
    std::size_t j = idx.size();
    while (j-- > 0) {
      std::size_t width = 0, pj = 0;
      for (const auto& [p, list] : per_prime) {
        if (pj++ == j) { width = list.size(); break; }
      }
      if (++idx[j] < width) break;
      idx[j] = 0;
    }
    if (j == std::size_t(-1)) break;
  }
  std::sort(out.begin(), out.end(),
            [](const Subgroup& a, const Subgroup& b) { return a.before(b); });
  return out;
}

inline CocyclicInventory inventory_cocyclic(const AbelianGroup& g, const Caps& caps = {}) {
  return eta_bruteforce(g, caps);
}

// The predicted class list for a rank-2 component C_{p^n} x C_{p^m}, n > m >= 1:
// cyclic classes C_{p^i} for m <= i <= n and two-generator classes
// C_{p^i} x C_{p^j} for m <= i <= n, 1 <= j <= m.  Sorted as inventories are.
inline std::vector<IsoType> list_cocyclic_types_rank2(Int p, int n, int m) {
  if (!num::is_prime(p)) throw ParseError("rank-2 class list: p must be prime");
  if (!(n > m && m >= 1)) throw ParseError("rank-2 class list requires n > m >= 1");
  std::vector<IsoType> out;
  for (int i = m; i <= n; ++i) out.push_back(IsoType{{{p, {i}}}});
  for (int i = m; i <= n; ++i)
    for (int j = 1; j <= m; ++j) out.push_back(IsoType{{{p, {i, j}}}});
  std::sort(out.begin(), out.end(), [](const IsoType& a, const IsoType& b) {
    if (a.order() != b.order()) return a.order() > b.order();
    return a < b;
  });
  return out;
}

}  // namespace abelian
