#pragma once

#include <map>
#include <string>
#include <vector>

#include "abelian/group.hpp"
#include "abelian/intmat.hpp"

namespace abelian {

/**
 * Subgroup of an AbelianGroup, held in canonical form.  Internally the
 * subgroup is the lattice L with D*Z^k <= L <= Z^k spanned by the generators
 * and the ambient relations; the stored matrix is its unique upper-triangular
 * echelon basis (pivots divide the ambient orders, entries above pivots
 * reduced).  Two subgroups are equal iff their matrices are identical, so
 * the representation doubles as a dedupe key.  Membership is an exact
 * triangular solve, O(k^2).
 */
class Subgroup {
public:
  Subgroup() = default;

  static Subgroup from_generators(const AbelianGroup& g, const std::vector<Element>& gens) {
    Mat rows;
    rows.reserve(gens.size());
    for (const auto& e : gens) {
      if (!g.valid(e))
        throw ParseError("generator does not belong to " + g.label());
      rows.push_back(e.c);
    }
    return Subgroup(g, intmat::hnf_lattice(rows, g.generator_orders()));
  }

  static Subgroup whole(const AbelianGroup& g) {
    std::vector<Element> gens;
    for (std::size_t i = 0; i < g.rank(); ++i) gens.push_back(g.unit(i));
    return from_generators(g, gens);
  }

  static Subgroup trivial(const AbelianGroup& g) { return from_generators(g, {}); }

  const AbelianGroup& ambient() const { return ambient_; }
  const Mat& lattice() const { return lattice_; }

  Int order() const { return order_; }

  bool contains(const Element& e) const {
    if (!ambient_.valid(e)) return false;
    return intmat::solve_upper(lattice_, e.c).has_value();
  }

  bool contains(const Subgroup& other) const {
    if (other.ambient_ != ambient_) return false;
    for (const auto& b : other.basis())
      if (!contains(b)) return false;
    return true;
  }

  // Canonical generator rows: the nonzero echelon rows, as group elements.
  std::vector<Element> basis() const {
    std::vector<Element> out;
    const auto& d = ambient_.generator_orders();
    for (std::size_t i = 0; i < lattice_.size(); ++i) {
      std::vector<Int> row(lattice_[i]);
      bool nonzero = false;
      for (std::size_t j = 0; j < row.size(); ++j) {
        row[j] %= d[j];
        nonzero = nonzero || row[j] != 0;
      }
      if (nonzero) out.push_back(Element{std::move(row)});
    }
    return out;
  }

  bool is_whole() const { return order_ == ambient_.order(); }
  bool is_trivial_subgroup() const { return order_ == 1; }

  // n*S = {n*s : s in S}
  Subgroup scaled(Int n) const {
    std::vector<Element> gens;
    for (const auto& b : basis()) gens.push_back(ambient_.mul(n, b));
    return from_generators(ambient_, gens);
  }

  // Exact integer coefficients of a member over the full echelon matrix;
  // the plumbing behind coordinate maps.  Throws for non-members.
  std::vector<Int> echelon_coefficients(const Element& e) const {
    if (!ambient_.valid(e))
      throw ParseError("element does not belong to " + ambient_.label());
    auto y = intmat::solve_upper(lattice_, e.c);
    if (!y) throw ParseError("element is not in the subgroup");
    return *y;
  }

  bool operator==(const Subgroup& o) const {
    return ambient_ == o.ambient_ && lattice_ == o.lattice_;
  }
  bool operator!=(const Subgroup& o) const { return !(*this == o); }

  // Deterministic ordering for inventories (same ambient assumed):
  // larger subgroups first, then lexicographic on the echelon matrix.
  bool before(const Subgroup& o) const {
    if (order_ != o.order_) return order_ > o.order_;
    return lattice_ < o.lattice_;
  }

  // Compact string key for hash-based dedupe.
  std::string key() const {
    std::string s;
    for (const auto& row : lattice_)
      for (Int v : row) {
        s += std::to_string(v);
        s += ',';
      }
    return s;
  }

private:
  Subgroup(const AbelianGroup& g, Mat lattice)
      : ambient_(g), lattice_(std::move(lattice)) {
    __int128 quot = 1;
    for (std::size_t i = 0; i < lattice_.size(); ++i) quot *= lattice_[i][i];
    order_ = Int(__int128(ambient_.order()) / quot);
  }

  AbelianGroup ambient_;
  Mat lattice_;
  Int order_ = 1;
};

// Restriction of S to the Sylow p-component: because the reference basis is
// grouped by prime, this is a coordinate slice, and slicing the generator
// rows is exact (the projection of a coprime direct product).
inline std::map<Int, Subgroup> sylow_decompose(const Subgroup& s) {
  const AbelianGroup& g = s.ambient();
  std::map<Int, Subgroup> out;
  for (const auto& [p, comp] : g.sylow_components()) {
    auto [b, e] = g.coord_range(p);
    std::vector<Element> gens;
    for (const auto& row : s.basis()) {
      std::vector<Int> slice(row.c.begin() + b, row.c.begin() + e);
      gens.push_back(comp.make(std::move(slice)));
    }
    out[p] = Subgroup::from_generators(comp, gens);
  }
  return out;
}

// Direct-product assembly of per-prime parts into a subgroup of g.  Parts
// must cover exactly the primes of g, each over the matching Sylow ambient.
inline Subgroup assemble_subgroup(const AbelianGroup& g,
                                  const std::map<Int, Subgroup>& parts) {
  auto comps = g.sylow_components();
  if (parts.size() != comps.size())
    throw ParseError("assemble_subgroup: prime set mismatch");
  std::vector<Element> gens;
  for (const auto& [p, part] : parts) {
    auto it = comps.find(p);
    if (it == comps.end() || part.ambient() != it->second)
      throw ParseError("assemble_subgroup: component ambient mismatch");
    auto [b, e] = g.coord_range(p);
    for (const auto& row : part.basis()) {
      std::vector<Int> full(g.rank(), 0);
      for (std::size_t j = b; j < e; ++j) full[j] = row.c[j - b];
      gens.push_back(g.make(std::move(full)));
    }
  }
  return Subgroup::from_generators(g, gens);
}

}  // namespace abelian
