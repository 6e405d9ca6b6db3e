#pragma once

#include <map>
#include <string>
#include <vector>

#include "abelian/group.hpp"
#include "abelian/intmat.hpp"
#include "abelian/subgroup.hpp"

namespace abelian {

/**
 * Abstract isomorphism type: per-prime exponent partitions, the same shape
 * as AbelianGroup::primaries().  Total order via the underlying maps makes
 * types usable as inventory keys.
 */
struct IsoType {
  std::map<Int, std::vector<int>> primaries;

  auto operator<=>(const IsoType&) const = default;

  Int order() const {
    Int n = 1;
    for (const auto& [p, parts] : primaries)
      for (int a : parts) n *= num::ipow(p, a);
    return n;
  }

  bool is_cyclic() const {
    for (const auto& [p, parts] : primaries)
      if (parts.size() > 1) return false;
    return true;
  }

  bool is_trivial() const { return primaries.empty(); }

  std::string label() const { return to_group().label(); }

  AbelianGroup to_group() const { return AbelianGroup::from_primaries(primaries); }
};

inline IsoType iso_type(const AbelianGroup& g) { return IsoType{g.primaries()}; }

namespace detail {

// Divisor list (from a diagonal presentation) -> per-prime partitions.
inline IsoType type_from_divisors(const std::vector<Int>& divisors) {
  std::map<Int, std::vector<int>> prim;
  for (Int s : divisors) {
    if (s <= 1) continue;
    for (auto [p, mult] : num::factorize(s)) prim[p].push_back(mult);
  }
  for (auto& [p, parts] : prim)
    std::sort(parts.begin(), parts.end(), std::greater<int>());
  return IsoType{std::move(prim)};
}

// Relation matrix of the subgroup presented on its full echelon rows g_1..g_k:
// row i solves y*H = d_i*e_i, so row-span(M) is exactly the kernel of
// Z^k ->> S.  Exact by construction since d_i*e_i lies in the lattice.
inline Mat relation_matrix(const Subgroup& s) {
  const auto& d = s.ambient().generator_orders();
  const std::size_t k = d.size();
  Mat m(k, std::vector<Int>(k, 0));
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Int> target(k, 0);
    target[i] = d[i];
    auto y = intmat::solve_upper(s.lattice(), target);
    if (!y) throw InvariantError("relation_matrix: ambient relation escaped the lattice");
    m[i] = *y;
  }
  return m;
}

}  // namespace detail

inline IsoType iso_type(const Subgroup& s) {
  return detail::type_from_divisors(intmat::snf(detail::relation_matrix(s)).divisors);
}

// Type of ambient/S: the ambient modulo the subgroup lattice is presented by
// the echelon matrix itself.
inline IsoType quotient_type(const Subgroup& s) {
  return detail::type_from_divisors(intmat::snf(s.lattice()).divisors);
}

// S is cocyclic iff the quotient is cyclic (at most one part per prime; a
// cyclic quotient may still involve several primes).  The whole group is
// always cocyclic; the trivial subgroup only when the ambient is cyclic.
inline bool is_cocyclic(const Subgroup& s) { return quotient_type(s).is_cyclic(); }

}  // namespace abelian
