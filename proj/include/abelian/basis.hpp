#pragma once

#include <vector>

#include "abelian/group.hpp"
#include "abelian/intmat.hpp"
#include "abelian/isotype.hpp"
#include "abelian/subgroup.hpp"

namespace abelian {

namespace num {

// inverse of a mod m for gcd(a, m) = 1
inline Int modinv(Int a, Int m) {
  auto r = intmat::xgcd(num::mod_floor(a, m), m);
  if (r.g != 1) throw InvariantError("modinv: arguments not coprime");
  return num::mod_floor(r.s, m);
}

// smallest non-negative x with c*x = rhs (mod m); nullopt when unsolvable
inline std::optional<Int> solve_congruence(Int c, Int rhs, Int m) {
  if (m == 1) return Int(0);
  c = num::mod_floor(c, m);
  rhs = num::mod_floor(rhs, m);
  Int g = std::gcd(c, m);
  if (g == 0) return rhs == 0 ? std::optional<Int>(0) : std::nullopt;
  if (rhs % g != 0) return std::nullopt;
  Int m2 = m / g;
  return (__int128(rhs / g) * modinv(c / g, m2)) % m2;
}

}  // namespace num

/**
 * Independent generating set of a subgroup: elements b_1..b_r with
 * S = <b_1> + ... + <b_r> direct and |b_j| given by the invariant-factor
 * chain (ascending, entries > 1).  Obtained from the Smith form of the
 * relation matrix; the tracked column transform makes the coordinate map
 * exact in both directions.
 */
class StructuredBasis {
public:
  explicit StructuredBasis(const Subgroup& s) : sub_(s) {
    auto rel = detail::relation_matrix(s);
    auto form = intmat::snf(rel);
    v_ = std::move(form.v);
    divisors_ = std::move(form.divisors);
    const AbelianGroup& g = s.ambient();
    const std::size_t k = g.rank();
    for (std::size_t j = 0; j < k; ++j) {
      if (divisors_[j] <= 1) continue;
      // b_j = sum_i vinv[j][i] * (echelon row i), as a group element
      std::vector<Int> acc(k, 0);
      for (std::size_t i = 0; i < k; ++i) {
        if (form.vinv[j][i] == 0) continue;
        for (std::size_t c = 0; c < k; ++c) {
          __int128 t = __int128(form.vinv[j][i]) * s.lattice()[i][c] + acc[c];
          acc[c] = Int(t % g.generator_orders()[c]);
        }
      }
      keep_.push_back(j);
      gens_.push_back(g.make(std::move(acc)));
      orders_.push_back(divisors_[j]);
    }
    for (std::size_t j = 0; j < gens_.size(); ++j)
      if (g.element_order(gens_[j]) != orders_[j])
        throw InvariantError("structured basis: generator order drifted");
  }

  const Subgroup& subgroup() const { return sub_; }
  const std::vector<Element>& generators() const { return gens_; }
  const std::vector<Int>& orders() const { return orders_; }
  std::size_t size() const { return gens_.size(); }

  // Coordinates of a member: e = sum_j coords[j] * b_j, 0 <= coords[j] < |b_j|.
  std::vector<Int> coords(const Element& e) const {
    auto y = sub_.echelon_coefficients(e);
    const std::size_t k = y.size();
    std::vector<Int> out;
    out.reserve(keep_.size());
    for (std::size_t idx = 0; idx < keep_.size(); ++idx) {
      std::size_t j = keep_[idx];
      __int128 x = 0;
      for (std::size_t i = 0; i < k; ++i) x += __int128(y[i]) * v_[i][j];
      Int m = orders_[idx];
      Int r = Int(x % m);
      out.push_back(r < 0 ? r + m : r);
    }
    return out;
  }

  Element combine(const std::vector<Int>& coords) const {
    const AbelianGroup& g = sub_.ambient();
    Element acc = g.zero();
    for (std::size_t j = 0; j < gens_.size(); ++j)
      acc = g.add(acc, g.mul(coords[j], gens_[j]));
    return acc;
  }

  // All members, by odometer over the independent coordinates (deterministic;
  // exactly order() elements, no dedupe needed).
  std::vector<Element> elements() const {
    const AbelianGroup& g = sub_.ambient();
    std::vector<Element> out;
    out.reserve(std::size_t(sub_.order()));
    std::vector<Int> digits(gens_.size(), 0);
    Element cur = g.zero();
    for (;;) {
      out.push_back(cur);
      std::size_t j = gens_.size();
      while (j-- > 0) {
        cur = g.add(cur, gens_[j]);
        if (++digits[j] < orders_[j]) break;
        digits[j] = 0;
      }
      if (j == std::size_t(-1)) break;
    }
    return out;
  }

private:
  Subgroup sub_;
  Mat v_;
  std::vector<Int> divisors_;
  std::vector<std::size_t> keep_;
  std::vector<Element> gens_;
  std::vector<Int> orders_;
};

// Largest t with u in p^t * S, for nonzero u in a p-subgroup S.
inline int height_in(const Subgroup& s, const Element& u, Int p) {
  if (!s.contains(u)) throw ParseError("height_in: element not in subgroup");
  int t = 0;
  Subgroup layer = s;
  for (;;) {
    layer = layer.scaled(p);
    if (!layer.contains(u)) return t;
    ++t;
    if (t > 200) throw InvariantError("height_in: no finite height (u = 0?)");
  }
}

}  // namespace abelian
