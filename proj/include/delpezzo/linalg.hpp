#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "delpezzo/error.hpp"

namespace delpezzo {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using Vec = std::vector<Int>;
using Mat = std::vector<Vec>;
using QVec = std::vector<Rat>;
using QMat = std::vector<QVec>;

inline Int dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) fail("LengthMismatch", "dot of vectors of unequal length");
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

inline Vec vec_add(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) fail("LengthMismatch", "sum of vectors of unequal length");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vec vec_sub(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) fail("LengthMismatch", "difference of vectors of unequal length");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vec vec_scale(const Int& c, const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

inline Vec vec_neg(const Vec& a) { return vec_scale(-1, a); }

/// Floor division for exact integers (cpp_int division truncates toward zero).
inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Int vec_content(const Vec& v) {
  Int g = 0;
  for (const Int& x : v) g = boost::multiprecision::gcd(g, x);
  return g;
}

/// Divides by the gcd of the entries; the zero vector is returned unchanged.
/// The direction (sign) of the vector is preserved.
inline Vec make_primitive(const Vec& v) {
  Int g = vec_content(v);
  if (g == 0 || g == 1) return v;
  Vec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] / g;
  return r;
}

inline bool lex_less(const Vec& a, const Vec& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

inline void sort_rows(Mat& m) { std::sort(m.begin(), m.end(), lex_less); }

inline Mat dedup_rows(Mat m) {
  sort_rows(m);
  m.erase(std::unique(m.begin(), m.end()), m.end());
  return m;
}

/// Canonical row Hermite normal form: pivots positive, entries above each
/// pivot reduced into [0, pivot), zero rows dropped, rows ordered by pivot
/// column.  Two integer matrices have equal hnf_rows iff their row spans
/// (as lattices) coincide.
inline Mat hnf_rows(Mat rows) {
  rows.erase(std::remove_if(rows.begin(), rows.end(),
                            [](const Vec& v) { return is_zero(v); }),
             rows.end());
  if (rows.empty()) return rows;
  const std::size_t n = rows[0].size();
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < rows.size(); ++col) {
    for (;;) {
      std::size_t best = rows.size();
      for (std::size_t j = r; j < rows.size(); ++j) {
        if (rows[j][col] == 0) continue;
        if (best == rows.size() ||
            boost::multiprecision::abs(rows[j][col]) < boost::multiprecision::abs(rows[best][col]))
          best = j;
      }
      if (best == rows.size()) break; // column clear below r
      std::swap(rows[r], rows[best]);
      bool clean = true;
      for (std::size_t j = r + 1; j < rows.size(); ++j) {
        if (rows[j][col] == 0) continue;
        Int q = rows[j][col] / rows[r][col];
        if (q != 0)
          for (std::size_t t = 0; t < n; ++t) rows[j][t] -= q * rows[r][t];
        if (rows[j][col] != 0) clean = false;
      }
      if (clean) {
        if (rows[r][col] < 0)
          for (std::size_t t = 0; t < n; ++t) rows[r][t] = -rows[r][t];
        for (std::size_t i = 0; i < r; ++i) {
          Int q = floor_div(rows[i][col], rows[r][col]);
          if (q != 0)
            for (std::size_t t = 0; t < n; ++t) rows[i][t] -= q * rows[r][t];
        }
        ++r;
        break;
      }
    }
  }
  rows.resize(r);
  return rows;
}

inline std::size_t rank_of(const Mat& m) { return hnf_rows(m).size(); }

/// Saturated integer basis of { x in Z^n : a.x = 0 for every row a }.
/// Computed by unimodular elimination starting from the identity basis, so
/// the result spans the full rational kernel intersected with Z^n; rows are
/// returned in canonical Hermite normal form.
inline Mat kernel_basis(const Mat& constraints, std::size_t n) {
  Mat basis(n, Vec(n, 0));
  for (std::size_t i = 0; i < n; ++i) basis[i][i] = 1;
  for (const Vec& a : constraints) {
    if (a.size() != n) fail("LengthMismatch", "kernel constraint of wrong length");
    std::vector<Int> vals(basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) vals[j] = dot(a, basis[j]);
    for (;;) {
      std::size_t pivot = basis.size(), live = 0;
      for (std::size_t j = 0; j < basis.size(); ++j) {
        if (vals[j] == 0) continue;
        ++live;
        if (pivot == basis.size() ||
            boost::multiprecision::abs(vals[j]) < boost::multiprecision::abs(vals[pivot]))
          pivot = j;
      }
      if (live == 0) break;
      if (live == 1) {
        basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(pivot));
        break;
      }
      for (std::size_t j = 0; j < basis.size(); ++j) {
        if (j == pivot || vals[j] == 0) continue;
        Int q = vals[j] / vals[pivot];
        if (q != 0) {
          vals[j] -= q * vals[pivot];
          for (std::size_t t = 0; t < n; ++t) basis[j][t] -= q * basis[pivot][t];
        }
      }
    }
  }
  return hnf_rows(basis);
}

inline QVec to_qvec(const Vec& v) {
  QVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
  return r;
}

/// Gaussian elimination over the rationals.  Returns one exact solution of
/// A x = b (free variables set to zero), or nullopt when inconsistent.
inline std::optional<QVec> rat_solve(QMat a, QVec b) {
  const std::size_t m = a.size();
  const std::size_t n = m == 0 ? 0 : a[0].size();
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < m; ++col) {
    std::size_t sel = m;
    for (std::size_t i = r; i < m; ++i)
      if (a[i][col] != 0) { sel = i; break; }
    if (sel == m) continue;
    std::swap(a[r], a[sel]);
    std::swap(b[r], b[sel]);
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || a[i][col] == 0) continue;
      Rat f = a[i][col] / a[r][col];
      for (std::size_t t = col; t < n; ++t) a[i][t] -= f * a[r][t];
      b[i] -= f * b[r];
    }
    pivot_col.push_back(col);
    ++r;
  }
  for (std::size_t i = r; i < m; ++i)
    if (b[i] != 0) return std::nullopt;
  QVec x(n, Rat(0));
  for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = b[i] / a[i][pivot_col[i]];
  return x;
}

/// Exact determinant of a square rational matrix.
inline Rat det_q(QMat a) {
  const std::size_t n = a.size();
  Rat det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t sel = n;
    for (std::size_t i = col; i < n; ++i)
      if (a[i][col] != 0) { sel = i; break; }
    if (sel == n) return Rat(0);
    if (sel != col) { std::swap(a[sel], a[col]); det = -det; }
    det *= a[col][col];
    for (std::size_t i = col + 1; i < n; ++i) {
      if (a[i][col] == 0) continue;
      Rat f = a[i][col] / a[col][col];
      for (std::size_t t = col; t < n; ++t) a[i][t] -= f * a[col][t];
    }
  }
  return det;
}

/// Scales a rational vector to a primitive integer vector with the same
/// direction.
inline Vec clear_denominators(const QVec& v) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  Int l = 1;
  for (const Rat& x : v) l = boost::multiprecision::lcm(l, denominator(x));
  Vec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    r[i] = numerator(v[i]) * (l / denominator(v[i]));
  return make_primitive(r);
}

/// Coordinates of g in the row basis B (rows independent): solves
/// (B B^T) x = B g.  Exact; returns rationals.
inline QVec gram_coords(const Mat& basis, const Vec& g) {
  const std::size_t k = basis.size();
  QMat gram(k, QVec(k));
  QVec rhs(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) gram[i][j] = Rat(dot(basis[i], basis[j]));
    rhs[i] = Rat(dot(basis[i], g));
  }
  auto sol = rat_solve(gram, rhs);
  if (!sol) fail("InternalError", "gram system unexpectedly inconsistent");
  return *sol;
}

/// Sum of x_i * basis_i with rational coefficients.
inline QVec combine_rows(const Mat& basis, const QVec& x) {
  if (basis.empty()) return {};
  QVec r(basis[0].size(), Rat(0));
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t t = 0; t < r.size(); ++t) r[t] += x[i] * Rat(basis[i][t]);
  return r;
}

} // namespace delpezzo
