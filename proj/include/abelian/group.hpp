#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "abelian/intmat.hpp"

namespace abelian {

class ParseError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class CapError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// An element is a coordinate vector over the ambient reference basis,
// componentwise reduced: 0 <= c[i] < d_i at all times.
struct Element {
  std::vector<Int> c;
  auto operator<=>(const Element&) const = default;
};

namespace num {

inline bool is_prime(Int n) {
  if (n < 2) return false;
  for (Int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// prime -> multiplicity, by trial division; inputs are desk-scale.
inline std::map<Int, int> factorize(Int n) {
  if (n < 1) throw ParseError("factorize: positive integer required");
  std::map<Int, int> out;
  for (Int d = 2; d * d <= n; ++d)
    while (n % d == 0) { ++out[d]; n /= d; }
  if (n > 1) ++out[n];
  return out;
}

inline Int ipow(Int b, int e) {
  Int r = 1;
  while (e-- > 0) {
    if (r > (Int(1) << 62) / b) throw ParseError("prime power too large");
    r *= b;
  }
  return r;
}

inline Int mod_floor(Int a, Int m) {
  Int r = a % m;
  return r < 0 ? r + m : r;
}

// valuation of n at p (n != 0)
inline int valuation(Int n, Int p) {
  int v = 0;
  while (n % p == 0) { n /= p; ++v; }
  return v;
}

}  // namespace num

/**
 * Finite abelian group in primary decomposition.  For each prime p the group
 * stores a weakly decreasing exponent list [a_1 >= a_2 >= ...], and the
 * reference basis is the concatenation of the cyclic factors C_{p^{a_i}},
 * primes ascending.  The trivial group has rank zero and is first-class:
 * every operation below accepts it.
 */
class AbelianGroup {
public:
  AbelianGroup() = default;

  static AbelianGroup from_primaries(std::map<Int, std::vector<int>> prim) {
    AbelianGroup g;
    for (auto& [p, parts] : prim) {
      if (!num::is_prime(p)) throw ParseError("not a prime: " + std::to_string(p));
      if (parts.empty()) continue;
      for (int a : parts)
        if (a < 1) throw ParseError("exponent must be >= 1");
      std::sort(parts.begin(), parts.end(), std::greater<int>());
      g.primaries_[p] = parts;
    }
    g.finish();
    return g;
  }

  // Grammar: group := factor ('x' factor)*, factor := 'C' integer | p^[a1,a2,...]
  // Whitespace is ignored and the leading C is case-insensitive.  Composite
  // C_n factors are split into prime powers on the spot.
  static AbelianGroup parse(const std::string& spec) {
    std::string s;
    for (char ch : spec)
      if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) throw ParseError("empty group spec");
    std::map<Int, std::vector<int>> prim;
    std::size_t pos = 0;
    int depth = 0;
    std::string tok;
    auto flush = [&] {
      if (tok.empty()) throw ParseError("empty factor in group spec");
      parse_factor(tok, prim);
      tok.clear();
    };
    for (; pos < s.size(); ++pos) {
      char ch = s[pos];
      if (ch == '[') ++depth;
      if (ch == ']') --depth;
      if ((ch == 'x' || ch == 'X') && depth == 0 && !tok.empty() &&
          tok.back() != '^') {
        flush();
      } else {
        tok.push_back(ch);
      }
    }
    flush();
    std::map<Int, std::vector<int>> merged;
    for (auto& [p, parts] : prim) merged[p] = parts;
    return from_primaries(std::move(merged));
  }

  const std::map<Int, std::vector<int>>& primaries() const { return primaries_; }
  const std::vector<Int>& generator_orders() const { return orders_; }
  std::size_t rank() const { return orders_.size(); }
  Int order() const { return order_; }
  Int exponent() const { return exponent_; }
  bool is_trivial() const { return orders_.empty(); }

  bool operator==(const AbelianGroup& o) const { return primaries_ == o.primaries_; }
  bool operator!=(const AbelianGroup& o) const { return !(*this == o); }

  Element zero() const { return Element{std::vector<Int>(rank(), 0)}; }

  Element unit(std::size_t i) const {
    check_index(i);
    Element e = zero();
    e.c[i] = orders_[i] > 1 ? 1 : 0;
    return e;
  }

  bool valid(const Element& e) const {
    if (e.c.size() != rank()) return false;
    for (std::size_t i = 0; i < rank(); ++i)
      if (e.c[i] < 0 || e.c[i] >= orders_[i]) return false;
    return true;
  }

  // Constructs an element, reducing arbitrary integer coordinates.
  Element make(std::vector<Int> coords) const {
    if (coords.size() != rank())
      throw ParseError("element has wrong number of coordinates");
    for (std::size_t i = 0; i < rank(); ++i)
      coords[i] = num::mod_floor(coords[i], orders_[i]);
    return Element{std::move(coords)};
  }

  Element add(const Element& a, const Element& b) const {
    require(a); require(b);
    Element r = a;
    for (std::size_t i = 0; i < rank(); ++i)
      r.c[i] = (r.c[i] + b.c[i]) % orders_[i];
    return r;
  }

  Element neg(const Element& a) const {
    require(a);
    Element r = a;
    for (std::size_t i = 0; i < rank(); ++i)
      r.c[i] = r.c[i] == 0 ? 0 : orders_[i] - r.c[i];
    return r;
  }

  Element sub(const Element& a, const Element& b) const { return add(a, neg(b)); }

  Element mul(Int n, const Element& a) const {
    require(a);
    Element r = a;
    for (std::size_t i = 0; i < rank(); ++i) {
      Int m = num::mod_floor(n, orders_[i]);
      r.c[i] = Int((__int128(m) * a.c[i]) % orders_[i]);
    }
    return r;
  }

  Int element_order(const Element& a) const {
    require(a);
    Int ord = 1;
    for (std::size_t i = 0; i < rank(); ++i) {
      Int oi = orders_[i] / std::gcd(orders_[i], a.c[i]);
      ord = std::lcm(ord, oi);
    }
    return ord;
  }

  // True iff for each prime all exponent parts are equal.
  bool is_homocyclic() const {
    for (const auto& [p, parts] : primaries_)
      for (int a : parts)
        if (a != parts.front()) return false;
    return true;
  }

  // Number of divisors of exp(G).
  Int tau() const {
    Int t = 1;
    for (const auto& [p, parts] : primaries_) t *= parts.front() + 1;
    return t;
  }

  // Coordinate block [begin, end) occupied by the Sylow p-component.
  std::pair<std::size_t, std::size_t> coord_range(Int p) const {
    std::size_t begin = 0;
    for (const auto& [q, parts] : primaries_) {
      if (q == p) return {begin, begin + parts.size()};
      begin += parts.size();
    }
    throw ParseError("no component for prime " + std::to_string(p));
  }

  std::map<Int, AbelianGroup> sylow_components() const {
    std::map<Int, AbelianGroup> out;
    for (const auto& [p, parts] : primaries_)
      out[p] = from_primaries({{p, parts}});
    return out;
  }

  bool is_p_group() const { return primaries_.size() <= 1; }

  // Lexicographic element iteration: (0,..,0), (0,..,0,1), ...
  // Returns false when the sequence wraps back to zero.
  bool advance(Element& e) const {
    for (std::size_t i = rank(); i-- > 0;) {
      if (++e.c[i] < orders_[i]) return true;
      e.c[i] = 0;
    }
    return false;
  }

  template <class F>
  void for_each_element(F&& f) const {
    Element e = zero();
    do {
      f(e);
    } while (advance(e));
  }

  // Reference-basis display form, e.g. "C4xC2xC9xC3"; "C1" for the trivial group.
  std::string label() const {
    if (is_trivial()) return "C1";
    std::string out;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      if (i) out += 'x';
      out += 'C';
      out += std::to_string(orders_[i]);
    }
    return out;
  }

  // Primary display form, e.g. "2^[2,1] x 3^[2,1]"; "1" for the trivial group.
  std::string primary_label() const {
    if (is_trivial()) return "1";
    std::string out;
    for (const auto& [p, parts] : primaries_) {
      if (!out.empty()) out += " x ";
      out += std::to_string(p) + "^[";
      for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(parts[i]);
      }
      out += ']';
    }
    return out;
  }

private:
  void finish() {
    orders_.clear();
    order_ = 1;
    exponent_ = 1;
    for (const auto& [p, parts] : primaries_) {
      for (int a : parts) {
        Int d = num::ipow(p, a);
        if (order_ > (Int(1) << 62) / d) throw ParseError("group order too large");
        order_ *= d;
        orders_.push_back(d);
      }
      exponent_ = std::lcm(exponent_, num::ipow(p, parts.front()));
    }
  }

  static void parse_factor(const std::string& tok, std::map<Int, std::vector<int>>& prim) {
    if (tok == "1") return;  // trivial factor, as printed by primary_label()
    if (tok[0] == 'C' || tok[0] == 'c') {
      Int n = parse_int(tok.substr(1), tok);
      if (n < 1) throw ParseError("cyclic order must be >= 1: " + tok);
      for (auto [p, mult] : num::factorize(n)) prim[p].push_back(mult);
      return;
    }
    auto caret = tok.find('^');
    if (caret == std::string::npos || caret + 1 >= tok.size() ||
        tok[caret + 1] != '[' || tok.back() != ']')
      throw ParseError("bad factor: " + tok);
    Int p = parse_int(tok.substr(0, caret), tok);
    if (!num::is_prime(p)) throw ParseError("not a prime: " + tok);
    std::string body = tok.substr(caret + 2, tok.size() - caret - 3);
    if (body.empty()) throw ParseError("empty exponent list: " + tok);
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
      Int a = parse_int(item, tok);
      if (a < 1 || a > 62) throw ParseError("exponent out of range: " + tok);
      prim[p].push_back(int(a));
    }
  }

  static Int parse_int(const std::string& digits, const std::string& ctx) {
    if (digits.empty()) throw ParseError("missing integer in: " + ctx);
    Int v = 0;
    for (char ch : digits) {
      if (!std::isdigit(static_cast<unsigned char>(ch)))
        throw ParseError("bad integer in: " + ctx);
      if (v > (Int(1) << 62) / 10) throw ParseError("integer too large: " + ctx);
      v = v * 10 + (ch - '0');
    }
    return v;
  }

  void check_index(std::size_t i) const {
    if (i >= rank()) throw ParseError("generator index out of range");
  }

  void require(const Element& e) const {
    if (!valid(e))
      throw ParseError("element does not belong to " + label());
  }

  std::map<Int, std::vector<int>> primaries_;
  std::vector<Int> orders_;
  Int order_ = 1;
  Int exponent_ = 1;
};

}  // namespace abelian
