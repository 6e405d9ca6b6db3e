#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

// Exact integer matrix routines for lattices L with D*Z^k <= L <= Z^k,
// where D = diag(d_1..d_k) collects the ambient cyclic factor orders.
// Everything here is deterministic and allocation-light; intermediate
// arithmetic runs in __int128 so no reduction step can overflow for the
// group sizes this library accepts (ambient order < 2^62).

namespace abelian {

using Int = std::int64_t;
using Mat = std::vector<std::vector<Int>>;

class InvariantError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

namespace intmat {

using Wide = __int128;
using WRow = std::vector<Wide>;
using WMat = std::vector<WRow>;

inline Int to_int(Wide v) {
  if (v > Wide(INT64_MAX) || v < Wide(INT64_MIN))
    throw InvariantError("intmat: value out of int64 range");
  return static_cast<Int>(v);
}

// Floor division / non-negative remainder for b > 0.
inline Wide fdiv(Wide a, Wide b) {
  Wide q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}
inline Wide fmod(Wide a, Wide b) { return a - fdiv(a, b) * b; }

struct Xgcd {
  Int g, s, t;  // g = s*a + t*b, g >= 0
};

inline Xgcd xgcd(Int a, Int b) {
  Int old_r = a, r = b;
  Int old_s = 1, s = 0;
  Int old_t = 0, t = 1;
  while (r != 0) {
    Int q = old_r / r;
    old_r -= q * r; std::swap(old_r, r);
    old_s -= q * s; std::swap(old_s, s);
    old_t -= q * t; std::swap(old_t, t);
  }
  if (old_r < 0) { old_r = -old_r; old_s = -old_s; old_t = -old_t; }
  return {old_r, old_s, old_t};
}

// Canonical echelon basis of the lattice spanned by `rows` together with the
// ambient relations d_j * e_j.  Output H is k x k upper triangular with
//   H[j][j] > 0,  H[j][j] | d_j,  0 <= H[i][j] < H[j][j]  for i < j,
// and row-span_Z(H) = row-span_Z(rows) + D*Z^k.  H is unique for the lattice,
// so equal subgroups always produce identical matrices.
inline Mat hnf_lattice(const Mat& rows, const std::vector<Int>& diag) {
  const std::size_t k = diag.size();
  WMat work;
  work.reserve(rows.size() + k);
  for (const auto& r : rows) {
    if (r.size() != k) throw InvariantError("hnf_lattice: row width mismatch");
    WRow w(k);
    bool nonzero = false;
    for (std::size_t j = 0; j < k; ++j) {
      w[j] = fmod(Wide(r[j]), Wide(diag[j]));
      nonzero = nonzero || w[j] != 0;
    }
    if (nonzero) work.push_back(std::move(w));
  }
  for (std::size_t j = 0; j < k; ++j) {
    WRow w(k, 0);
    w[j] = diag[j];
    work.push_back(std::move(w));
  }

  // Forward phase: establish one pivot row per column.  While column `col` is
  // being processed, the relation rows d_j*e_j for j > col are still present
  // untouched, which is what makes the eager mod-d_j entry reductions
  // span-preserving.
  WMat pivot(k);
  std::vector<bool> used(work.size(), false);
  for (std::size_t col = 0; col < k; ++col) {
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < work.size(); ++i) {
      if (used[i] || work[i][col] == 0) continue;
      bool lead = true;
      for (std::size_t j = 0; j < col; ++j)
        if (work[i][j] != 0) { lead = false; break; }
      if (lead) active.push_back(i);
    }
    // The relation row for this column guarantees `active` is nonempty.
    if (active.empty()) throw InvariantError("hnf_lattice: missing pivot");
    for (auto i : active)
      if (work[i][col] < 0)
        for (std::size_t j = col; j < k; ++j) work[i][j] = -work[i][j];
    while (active.size() > 1) {
      std::size_t best = active[0];
      for (auto i : active)
        if (work[i][col] < work[best][col]) best = i;
      std::vector<std::size_t> next{best};
      for (auto i : active) {
        if (i == best) continue;
        Wide q = work[i][col] / work[best][col];
        for (std::size_t j = col; j < k; ++j) {
          work[i][j] -= q * work[best][j];
          if (j > col) work[i][j] = fmod(work[i][j], Wide(diag[j]));
        }
        if (work[i][col] != 0) next.push_back(i);
      }
      active = std::move(next);
    }
    std::size_t p = active[0];
    for (std::size_t j = col + 1; j < k; ++j)
      work[p][j] = fmod(work[p][j], Wide(diag[j]));
    pivot[col] = work[p];
    used[p] = true;
  }

  // Back phase: reduce entries above each pivot.  Only unimodular row
  // operations on the final basis from here on.
  for (std::size_t col = 1; col < k; ++col) {
    for (std::size_t i = 0; i < col; ++i) {
      Wide q = fdiv(pivot[i][col], pivot[col][col]);
      if (q == 0) continue;
      for (std::size_t j = col; j < k; ++j)
        pivot[i][j] -= q * pivot[col][j];
    }
  }

  Mat out(k, std::vector<Int>(k, 0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) out[i][j] = to_int(pivot[i][j]);
  return out;
}

// Solve y * H = target exactly over Z for upper triangular H with positive
// diagonal.  Returns nullopt when no integer solution exists.  This is both
// the membership test and the coordinate map onto the echelon generators.
inline std::optional<std::vector<Int>> solve_upper(const Mat& h,
                                                   const std::vector<Int>& target) {
  const std::size_t k = target.size();
  std::vector<Wide> rem(k);
  for (std::size_t j = 0; j < k; ++j) rem[j] = target[j];
  std::vector<Int> y(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    if (rem[i] % h[i][i] != 0) return std::nullopt;
    Wide q = rem[i] / h[i][i];
    y[i] = to_int(q);
    for (std::size_t j = i; j < k; ++j) rem[j] -= q * h[i][j];
  }
  for (std::size_t j = 0; j < k; ++j)
    if (rem[j] != 0) return std::nullopt;
  return y;
}

// Smith normal form with column-transform tracking: finds unimodular U, V
// with U*M*V diagonal (divisors d_1 | d_2 | ...).  U is not returned; V and
// V^{-1} are, because presenting a finite abelian group as Z^k / row-span(M)
// turns V into the coordinate change onto independent cyclic generators and
// the rows of V^{-1} into those generators.
struct Snf {
  std::vector<Int> divisors;  // length k, nonnegative, divisibility chain
  Mat v;                      // k x k unimodular
  Mat vinv;                   // inverse of v
};

inline Snf snf(const Mat& m_in) {
  const std::size_t rows = m_in.size();
  const std::size_t cols = rows == 0 ? 0 : m_in[0].size();
  WMat m(rows, WRow(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m[i][j] = m_in[i][j];
  WMat v(cols, WRow(cols, 0)), vinv(cols, WRow(cols, 0));
  for (std::size_t j = 0; j < cols; ++j) v[j][j] = vinv[j][j] = 1;

  auto col_sub = [&](std::size_t dst, std::size_t src, Wide q) {
    // col_dst -= q * col_src
    for (std::size_t i = 0; i < rows; ++i) m[i][dst] -= q * m[i][src];
    for (std::size_t i = 0; i < cols; ++i) v[i][dst] -= q * v[i][src];
    for (std::size_t j = 0; j < cols; ++j) vinv[src][j] += q * vinv[dst][j];
  };
  auto col_swap = [&](std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < rows; ++i) std::swap(m[i][a], m[i][b]);
    for (std::size_t i = 0; i < cols; ++i) std::swap(v[i][a], v[i][b]);
    std::swap(vinv[a], vinv[b]);
  };
  auto col_neg = [&](std::size_t a) {
    for (std::size_t i = 0; i < rows; ++i) m[i][a] = -m[i][a];
    for (std::size_t i = 0; i < cols; ++i) v[i][a] = -v[i][a];
    for (std::size_t j = 0; j < cols; ++j) vinv[a][j] = -vinv[a][j];
  };
  auto row_sub = [&](std::size_t dst, std::size_t src, Wide q) {
    for (std::size_t j = 0; j < cols; ++j) m[dst][j] -= q * m[src][j];
  };
  auto row_swap = [&](std::size_t a, std::size_t b) { std::swap(m[a], m[b]); };

  const std::size_t steps = rows < cols ? rows : cols;
  for (std::size_t t = 0; t < steps; ++t) {
    for (;;) {
      // Locate minimal nonzero entry in the trailing block.
      std::size_t bi = t, bj = t;
      Wide best = 0;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          Wide a = m[i][j] < 0 ? -m[i][j] : m[i][j];
          if (a != 0 && (best == 0 || a < best)) { best = a; bi = i; bj = j; }
        }
      if (best == 0) { t = steps; break; }  // trailing block zero, done
      if (bi != t) row_swap(t, bi);
      if (bj != t) col_swap(t, bj);
      if (m[t][t] < 0) col_neg(t);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        Wide q = fdiv(m[i][t], m[t][t]);
        if (q != 0) row_sub(i, t, q);
        if (m[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        Wide q = fdiv(m[t][j], m[t][t]);
        if (q != 0) col_sub(j, t, q);
        if (m[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // Enforce the divisibility chain before advancing.
      bool fixed = false;
      for (std::size_t i = t + 1; i < rows && !fixed; ++i)
        for (std::size_t j = t + 1; j < cols && !fixed; ++j)
          if (m[i][j] % m[t][t] != 0) {
            row_sub(t, i, Wide(-1));  // row_t += row_i
            fixed = true;
          }
      if (!fixed) break;
    }
    if (t >= steps) break;
  }

  Snf out;
  out.divisors.assign(cols, 0);
  for (std::size_t t = 0; t < steps; ++t)
    out.divisors[t] = to_int(m[t][t] < 0 ? -m[t][t] : m[t][t]);
  out.v.assign(cols, std::vector<Int>(cols, 0));
  out.vinv.assign(cols, std::vector<Int>(cols, 0));
  for (std::size_t i = 0; i < cols; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      out.v[i][j] = to_int(v[i][j]);
      out.vinv[i][j] = to_int(vinv[i][j]);
    }
  return out;
}

}  // namespace intmat
}  // namespace abelian
