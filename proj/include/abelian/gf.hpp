#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "abelian/basis.hpp"
#include "abelian/group.hpp"

namespace abelian {

namespace num {

// Least k >= 1 with a^k = 1 modulo m (m >= 1; a coprime to m).
inline int multiplicative_order(Int a, Int m) {
  if (m <= 1) return 1;
  a = mod_floor(a, m);
  if (std::gcd(a, m) != 1) throw ParseError("order of a non-unit requested");
  Int x = a % m;
  int k = 1;
  while (x != 1) {
    x = (x * a) % m;
    if (++k > m) throw InvariantError("unit order exceeds the modulus");
  }
  return k;
}

}  // namespace num

/**
 * Arithmetic in F_{q^d} for prime q: dense little-endian coefficient vectors
 * of length d, reduced modulo a fixed monic irreducible polynomial.  The
 * modulus is the first irreducible monic polynomial of degree d in counting
 * order of the non-leading coefficient vector, so two constructions with the
 * same (q, d) are identical — reproducibility comes from the scan order, not
 * from a seed.
 */
class GField {
public:
  using El = std::vector<Int>;

  GField(Int q, int d) : q_(q), d_(d) {
    if (q < 2 || !num::is_prime(q)) throw ParseError("base field size must be prime");
    if (d < 1) throw ParseError("extension degree must be positive");
    Int size = 1;
    for (int i = 0; i < d; ++i) {
      size *= q;
      if (size > (Int(1) << 62) / q) throw CapError("splitting field too large");
    }
    size_ = size;
    find_modulus();
  }

  Int q() const { return q_; }
  int degree() const { return d_; }
  Int size() const { return size_; }
  const std::vector<Int>& modulus() const { return modulus_; }

  El zero() const { return El(d_, 0); }
  El one() const { return scalar(1); }
  El scalar(Int c) const {
    El e(d_, 0);
    e[0] = num::mod_floor(c, q_);
    return e;
  }
  bool is_zero(const El& a) const {
    for (Int c : a)
      if (c != 0) return false;
    return true;
  }
  // True iff the element lies in the prime subfield F_q.
  bool is_scalar(const El& a) const {
    for (int i = 1; i < d_; ++i)
      if (a[i] != 0) return false;
    return true;
  }

  El add(const El& a, const El& b) const {
    El r(d_);
    for (int i = 0; i < d_; ++i) r[i] = (a[i] + b[i]) % q_;
    return r;
  }
  El sub(const El& a, const El& b) const {
    El r(d_);
    for (int i = 0; i < d_; ++i) r[i] = num::mod_floor(a[i] - b[i], q_);
    return r;
  }
  El mul(const El& a, const El& b) const {
    std::vector<Int> prod(2 * d_ - 1, 0);
    for (int i = 0; i < d_; ++i) {
      if (a[i] == 0) continue;
      for (int j = 0; j < d_; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % q_;
    }
    reduce(prod);
    prod.resize(d_);
    return prod;
  }
  El pow(El a, Int e) const {
    El r = one();
    while (e > 0) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  El inv(const El& a) const {
    if (is_zero(a)) throw ParseError("inverse of zero");
    return pow(a, size_ - 2);
  }

  /**
   * A fixed primitive e-th root of unity: gamma^((q^d - 1)/e) for the first
   * multiplicative generator gamma in counting order.  Requires e | q^d - 1,
   * which holds whenever d is the multiplicative order of q modulo e.
   */
  El primitive_root_of_unity(Int e) const {
    if (e < 1 || (size_ - 1) % e != 0)
      throw ParseError("field has no root of unity of the requested order");
    El zeta = pow(generator(), (size_ - 1) / e);
    for (auto [r, a] : num::factorize(e))
      if (is_scalar_one(pow(zeta, e / r)))
        throw InvariantError("root of unity has deficient order");
    if (!is_scalar_one(pow(zeta, e)))
      throw InvariantError("root of unity order check failed");
    return zeta;
  }

  // First multiplicative generator of the field in counting order.
  El generator() const {
    auto factors = num::factorize(size_ - 1);
    El cand(d_, 0);
    while (advance_counting(cand)) {
      bool full_order = true;
      for (auto [r, a] : factors)
        if (is_scalar_one(pow(cand, (size_ - 1) / r))) { full_order = false; break; }
      if (full_order) return cand;
    }
    throw InvariantError("multiplicative group has no generator");
  }

private:
  bool is_scalar_one(const El& a) const {
    if (a[0] != 1) return false;
    for (int i = 1; i < d_; ++i)
      if (a[i] != 0) return false;
    return true;
  }

  // Counting-order odometer over coefficient vectors, first coordinate
  // fastest; returns false after the last vector wraps to zero.
  bool advance_counting(std::vector<Int>& c) const {
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (++c[i] < q_) return true;
      c[i] = 0;
    }
    return false;
  }

  // Reduce a polynomial (little-endian, arbitrary length) by the monic
  // modulus, in place.
  void reduce(std::vector<Int>& p) const {
    for (std::size_t k = p.size(); k-- > std::size_t(d_);) {
      Int c = p[k];
      if (c == 0) continue;
      p[k] = 0;
      for (int i = 0; i < d_; ++i)
        p[k - d_ + i] = num::mod_floor(p[k - d_ + i] - c * modulus_[i], q_);
    }
  }

  // Polynomial helpers over F_q used only for the irreducibility scan.
  using Poly = std::vector<Int>;  // little-endian, no trailing-zero guarantee

  static int pdeg(const Poly& f) {
    for (std::size_t i = f.size(); i-- > 0;)
      if (f[i] != 0) return int(i);
    return -1;
  }

  Poly pmod(Poly a, const Poly& f) const {
    int df = pdeg(f);
    Int lead_inv = num::modinv(f[df], q_);
    for (int k = pdeg(a); k >= df; k = pdeg(a)) {
      Int c = (a[k] * lead_inv) % q_;
      for (int i = 0; i <= df; ++i)
        a[k - df + i] = num::mod_floor(a[k - df + i] - c * f[i], q_);
    }
    a.resize(std::size_t(std::max(pdeg(a) + 1, 1)), 0);  // keep vectors tight
    return a;
  }

  Poly pmul_mod(const Poly& a, const Poly& b, const Poly& f) const {
    Poly prod(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j)
        prod[i + j] = (prod[i + j] + a[i] * b[j]) % q_;
    }
    return pmod(std::move(prod), f);
  }

  Poly ppow_mod(Poly a, Int e, const Poly& f) const {
    Poly r{1};
    while (e > 0) {
      if (e & 1) r = pmul_mod(r, a, f);
      a = pmul_mod(a, a, f);
      e >>= 1;
    }
    return r;
  }

  Poly pgcd(Poly a, Poly b) const {
    while (pdeg(b) >= 0) {
      Poly r = pmod(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return a;
  }

  // x^(q^k) modulo f, via k successive q-th powers.
  Poly frobenius_power(int k, const Poly& f) const {
    Poly x{0, 1};
    Poly r = pmod(x, f);
    for (int i = 0; i < k; ++i) r = ppow_mod(r, q_, f);
    return r;
  }

  bool irreducible(const Poly& f) const {
    int d = pdeg(f);
    if (d <= 0) return false;
    if (d == 1) return true;
    Poly x{0, 1};
    for (auto [r, a] : num::factorize(Int(d))) {
      Poly h = frobenius_power(d / int(r), f);
      // subtract x
      Poly diff = h;
      if (diff.size() < 2) diff.resize(2, 0);
      diff[1] = num::mod_floor(diff[1] - 1, q_);
      Poly gg = pgcd(f, diff);
      if (pdeg(gg) != 0) return false;
    }
    Poly top = frobenius_power(d, f);
    Poly diff = top;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = num::mod_floor(diff[1] - 1, q_);
    return pdeg(diff) < 0;
  }

  void find_modulus() {
    std::vector<Int> low(d_, 0);
    for (;;) {
      Poly f(low.begin(), low.end());
      f.push_back(1);  // monic
      if (irreducible(f)) {
        modulus_ = f;
        return;
      }
      if (!advance_counting(low))
        throw InvariantError("no irreducible polynomial found");
    }
  }

  Int q_;
  int d_;
  Int size_ = 0;
  std::vector<Int> modulus_;  // length d+1, little-endian, monic
};

/**
 * The splitting-field recipe for a group algebra F_q G: prime q coprime to
 * |G|, extension degree = multiplicative order of q modulo exp(G), and the
 * deterministic irreducible modulus for that degree.
 */
struct FieldSpec {
  Int q = 2;
  int degree = 1;
  std::vector<Int> modulus;

  static FieldSpec for_group(const AbelianGroup& g, Int q) {
    if (q < 2 || !num::is_prime(q))
      throw ParseError("base field size must be prime");
    if (std::gcd(q, g.order()) != 1)
      throw ParseError("characteristic divides the group order");
    FieldSpec f;
    f.q = q;
    f.degree = num::multiplicative_order(q, g.exponent());
    f.modulus = GField(q, f.degree).modulus();
    return f;
  }

  GField field() const { return GField(q, degree); }
};

}  // namespace abelian
