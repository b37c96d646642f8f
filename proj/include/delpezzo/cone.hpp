#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "delpezzo/linalg.hpp"

namespace delpezzo {

/// Exact rational polyhedral cone with canonical dual representations.
///
/// Canonical fields:
///  * equations: Hermite-normal-form basis of span(C)^perp;
///  * lineality: Hermite-normal-form basis of the lineality space;
///  * pointed  : extreme rays of C intersected with the orthogonal
///               complement of the lineality space, primitive, lex-sorted;
///  * facets   : facet-defining functionals within the span, each chosen as
///               the unique primitive representative lying in the row space
///               of the span basis (hence orthogonal to all equations),
///               lex-sorted.
/// Equal cones therefore have equal fields.
class Cone {
public:
  std::size_t ambient_dim() const { return n_; }
  std::size_t dim() const { return dim_; }
  const Mat& pointed_rays() const { return pointed_; }
  const Mat& lineality() const { return lineality_; }
  const Mat& inequalities() const { return facets_; }
  const Mat& equations() const { return equations_; }
  bool is_zero() const { return dim_ == 0; }
  bool is_pointed() const { return lineality_.empty(); }

  /// Generator list: extreme rays plus both signs of the lineality basis.
  Mat rays() const {
    Mat r = pointed_;
    for (const Vec& l : lineality_) {
      r.push_back(l);
      r.push_back(vec_neg(l));
    }
    sort_rows(r);
    return r;
  }

  friend bool operator==(const Cone& a, const Cone& b) {
    return a.n_ == b.n_ && a.dim_ == b.dim_ && a.pointed_ == b.pointed_ &&
           a.lineality_ == b.lineality_ && a.facets_ == b.facets_ &&
           a.equations_ == b.equations_;
  }
  friend bool operator!=(const Cone& a, const Cone& b) { return !(a == b); }

  std::size_t n_ = 0;
  std::size_t dim_ = 0;
  Mat pointed_;
  Mat lineality_;
  Mat facets_;
  Mat equations_;
};

namespace detail {

using Bits = std::vector<std::uint64_t>;

inline Bits bits_make(std::size_t nbits) { return Bits((nbits + 63) / 64, 0); }
inline void bits_set(Bits& b, std::size_t i) { b[i / 64] |= (std::uint64_t{1} << (i % 64)); }
inline Bits bits_and(const Bits& a, const Bits& b) {
  Bits r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] & b[i];
  return r;
}
inline bool bits_subset(const Bits& a, const Bits& b) { // a subseteq b
  for (std::size_t i = 0; i < a.size(); ++i)
    if ((a[i] & ~b[i]) != 0) return false;
  return true;
}

inline Mat normalized_rows(const Mat& rows) {
  Mat out;
  out.reserve(rows.size());
  for (const Vec& r : rows) {
    if (is_zero(r)) continue;
    out.push_back(make_primitive(r));
  }
  return dedup_rows(std::move(out));
}

/// Extreme rays of { x in Q^k : row.x >= 0 for all rows }, which must be a
/// pointed cone (rank of the rows equal to k).  Classic double description:
/// a simplicial start from k independent rows, then incremental insertion
/// with the combinatorial adjacency test over exact zero-sets.
inline Mat dd_pointed(std::size_t k, const Mat& rows_in) {
  if (k == 0) return {};
  Mat rows = normalized_rows(rows_in);
  const std::size_t nrows = rows.size();

  // Greedy independent subset for the simplicial start.
  std::vector<std::size_t> start;
  {
    QMat echelon;
    std::vector<std::size_t> pivots;
    for (std::size_t i = 0; i < nrows && start.size() < k; ++i) {
      QVec v = to_qvec(rows[i]);
      for (std::size_t j = 0; j < echelon.size(); ++j) {
        if (v[pivots[j]] == 0) continue;
        Rat f = v[pivots[j]] / echelon[j][pivots[j]];
        for (std::size_t t = 0; t < k; ++t) v[t] -= f * echelon[j][t];
      }
      std::size_t p = k;
      for (std::size_t t = 0; t < k; ++t)
        if (v[t] != 0) { p = t; break; }
      if (p == k) continue;
      echelon.push_back(v);
      pivots.push_back(p);
      start.push_back(i);
    }
  }
  if (start.size() < k) fail("InternalError", "double description on a non-pointed system");

  // Process order: the start rows first, then the rest.
  std::vector<std::size_t> order = start;
  {
    std::vector<bool> used(nrows, false);
    for (std::size_t i : start) used[i] = true;
    for (std::size_t i = 0; i < nrows; ++i)
      if (!used[i]) order.push_back(i);
  }

  struct RayRec {
    Vec v;
    Bits zero;
  };
  std::vector<RayRec> rays;

  // Rays of the start cone: columns of the inverse of the start matrix.
  {
    QMat a(k, QVec(k));
    for (std::size_t i = 0; i < k; ++i) a[i] = to_qvec(rows[start[i]]);
    for (std::size_t i = 0; i < k; ++i) {
      QVec e(k, Rat(0));
      e[i] = 1;
      auto sol = rat_solve(a, e);
      if (!sol) fail("InternalError", "singular simplicial start");
      RayRec rec;
      rec.v = clear_denominators(*sol);
      rec.zero = bits_make(nrows);
      for (std::size_t j = 0; j < k; ++j)
        if (j != i) bits_set(rec.zero, j);
      rays.push_back(std::move(rec));
    }
  }

  for (std::size_t pos = k; pos < order.size(); ++pos) {
    const Vec& h = rows[order[pos]];
    std::vector<Int> val(rays.size());
    std::vector<std::size_t> plus, zero, minus;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      val[i] = dot(h, rays[i].v);
      if (val[i] > 0)
        plus.push_back(i);
      else if (val[i] < 0)
        minus.push_back(i);
      else
        zero.push_back(i);
    }
    if (minus.empty()) {
      for (std::size_t i : zero) bits_set(rays[i].zero, pos);
      continue;
    }
    std::vector<RayRec> next;
    for (std::size_t i : plus) next.push_back(rays[i]);
    for (std::size_t i : zero) {
      bits_set(rays[i].zero, pos);
      next.push_back(rays[i]);
    }
    for (std::size_t p : plus) {
      for (std::size_t m : minus) {
        Bits common = bits_and(rays[p].zero, rays[m].zero);
        bool adjacent = true;
        for (std::size_t t = 0; t < rays.size(); ++t) {
          if (t == p || t == m) continue;
          if (bits_subset(common, rays[t].zero)) { adjacent = false; break; }
        }
        if (!adjacent) continue;
        RayRec rec;
        rec.v = make_primitive(vec_sub(vec_scale(val[p], rays[m].v), vec_scale(val[m], rays[p].v)));
        rec.zero = bits_make(nrows);
        for (std::size_t t = 0; t <= pos; ++t)
          if (dot(rows[order[t]], rec.v) == 0) bits_set(rec.zero, t);
        next.push_back(std::move(rec));
      }
    }
    rays = std::move(next);
  }

  Mat out;
  out.reserve(rays.size());
  for (auto& r : rays) out.push_back(std::move(r.v));
  return dedup_rows(std::move(out));
}

/// Integer lift x = sum u_j * basis_j, normalized primitive.
inline Mat lift_rows(const Mat& basis, const Mat& us) {
  Mat out;
  out.reserve(us.size());
  for (const Vec& u : us) {
    Vec x(basis.empty() ? 0 : basis[0].size(), 0);
    for (std::size_t j = 0; j < basis.size(); ++j)
      for (std::size_t t = 0; t < x.size(); ++t) x[t] += u[j] * basis[j][t];
    out.push_back(make_primitive(x));
  }
  return out;
}

inline Mat transformed_rows(const Mat& rows, const Mat& basis) {
  Mat out;
  out.reserve(rows.size());
  for (const Vec& a : rows) {
    Vec t(basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) t[j] = dot(a, basis[j]);
    if (is_zero(t)) continue;
    out.push_back(make_primitive(t));
  }
  return dedup_rows(std::move(out));
}

/// Canonical generators of { x : eqs.x = 0, ineqs.x >= 0 }: the extreme rays
/// of the intersection with the orthogonal complement of the lineality
/// space, plus an HNF basis of the lineality space.
inline std::pair<Mat, Mat> core_generators(std::size_t n, const Mat& ineqs, const Mat& eqs) {
  Mat span_basis = kernel_basis(eqs, n);
  if (span_basis.empty()) return {{}, {}};
  Mat a = transformed_rows(ineqs, span_basis);
  Mat lin_local = kernel_basis(a, span_basis.size());
  if (lin_local.empty()) {
    Mat us = dd_pointed(span_basis.size(), a);
    Mat pointed = lift_rows(span_basis, us);
    sort_rows(pointed);
    return {std::move(pointed), {}};
  }
  Mat lin = hnf_rows(lift_rows(span_basis, lin_local));
  Mat eqs2 = eqs;
  for (const Vec& l : lin) eqs2.push_back(l);
  Mat basis2 = kernel_basis(eqs2, n);
  Mat pointed;
  if (!basis2.empty()) {
    Mat a2 = transformed_rows(ineqs, basis2);
    Mat us = dd_pointed(basis2.size(), a2);
    pointed = lift_rows(basis2, us);
    sort_rows(pointed);
  }
  return {std::move(pointed), std::move(lin)};
}

/// Facet functionals of the cone generated by the given generators, whose
/// span-perp basis is `equations`.  Each functional is lifted to the unique
/// representative in the row space of the span basis and scaled primitive.
inline Mat facet_rows_from_generators(std::size_t n, const Mat& pointed, const Mat& lin,
                                      const Mat& equations) {
  if (pointed.empty() && lin.empty()) return {};
  Mat span_basis = kernel_basis(equations, n);
  const std::size_t k = span_basis.size();
  if (k == 0) fail("InternalError", "nonzero generators with zero span");
  QMat gram(k, QVec(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) gram[i][j] = Rat(dot(span_basis[i], span_basis[j]));
  auto coords = [&](const Vec& g) {
    QVec rhs(k);
    for (std::size_t i = 0; i < k; ++i) rhs[i] = Rat(dot(span_basis[i], g));
    auto sol = rat_solve(gram, rhs);
    if (!sol) fail("InternalError", "gram system inconsistent");
    Vec c(k);
    for (std::size_t i = 0; i < k; ++i) {
      if (boost::multiprecision::denominator((*sol)[i]) != 1)
        fail("InternalError", "generator outside the saturated span lattice");
      c[i] = boost::multiprecision::numerator((*sol)[i]);
    }
    return c;
  };
  Mat dual_rows;
  for (const Vec& g : pointed) dual_rows.push_back(coords(g));
  for (const Vec& l : lin) {
    Vec c = coords(l);
    dual_rows.push_back(c);
    dual_rows.push_back(vec_neg(c));
  }
  Mat etas = dd_pointed(k, dual_rows);
  Mat out;
  out.reserve(etas.size());
  for (const Vec& eta : etas) {
    auto sol = rat_solve(gram, to_qvec(eta));
    if (!sol) fail("InternalError", "gram system inconsistent");
    out.push_back(clear_denominators(combine_rows(span_basis, *sol)));
  }
  sort_rows(out);
  return out;
}

inline void check_row_lengths(std::size_t n, const Mat& rows, const char* what) {
  for (const Vec& r : rows)
    if (r.size() != n) fail("DimensionMismatch", std::string(what) + " of wrong length");
}

} // namespace detail

/// Cone spanned by the given rays (the zero cone when the list is empty).
inline Cone from_rays(std::size_t n, const Mat& rays) {
  detail::check_row_lengths(n, rays, "ray");
  Cone c;
  c.n_ = n;
  Mat gens = detail::normalized_rows(rays);
  c.equations_ = kernel_basis(gens, n);
  c.dim_ = n - c.equations_.size();
  if (gens.empty()) return c;
  c.facets_ = detail::facet_rows_from_generators(n, gens, {}, c.equations_);
  auto [pointed, lin] = detail::core_generators(n, c.facets_, c.equations_);
  c.pointed_ = std::move(pointed);
  c.lineality_ = std::move(lin);
  return c;
}

/// Cone { x : ineq.x >= 0 for all ineqs, eq.x = 0 for all eqs }.
inline Cone from_inequalities(std::size_t n, const Mat& ineqs, const Mat& eqs = {}) {
  detail::check_row_lengths(n, ineqs, "inequality");
  detail::check_row_lengths(n, eqs, "equation");
  Cone c;
  c.n_ = n;
  auto [pointed, lin] = detail::core_generators(n, detail::normalized_rows(ineqs),
                                                detail::normalized_rows(eqs));
  c.pointed_ = std::move(pointed);
  c.lineality_ = std::move(lin);
  Mat gens = c.pointed_;
  for (const Vec& l : c.lineality_) gens.push_back(l);
  c.equations_ = kernel_basis(gens, n);
  c.dim_ = n - c.equations_.size();
  c.facets_ = detail::facet_rows_from_generators(n, c.pointed_, c.lineality_, c.equations_);
  return c;
}

/// The whole ambient space as a cone.
inline Cone full_cone(std::size_t n) { return from_inequalities(n, {}, {}); }

/// The zero cone.
inline Cone zero_cone(std::size_t n) { return from_rays(n, {}); }

inline void check_vector(const Cone& c, const Vec& v) {
  if (v.size() != c.ambient_dim()) fail("DimensionMismatch", "vector of wrong length");
}

inline bool contains(const Cone& c, const Vec& v) {
  check_vector(c, v);
  for (const Vec& e : c.equations())
    if (dot(e, v) != 0) return false;
  for (const Vec& h : c.inequalities())
    if (dot(h, v) < 0) return false;
  return true;
}

inline bool in_rel_interior(const Cone& c, const Vec& v) {
  check_vector(c, v);
  for (const Vec& e : c.equations())
    if (dot(e, v) != 0) return false;
  for (const Vec& h : c.inequalities())
    if (dot(h, v) <= 0) return false;
  return true;
}

/// Sum of the primitive extreme rays; the zero vector for subspace cones
/// (including the zero cone), which is their relative interior point.
inline Vec rel_interior_point(const Cone& c) {
  Vec p(c.ambient_dim(), 0);
  for (const Vec& r : c.pointed_rays()) p = vec_add(p, r);
  return p;
}

inline Cone intersect(const Cone& a, const Cone& b) {
  if (a.ambient_dim() != b.ambient_dim())
    fail("DimensionMismatch", "intersection of cones in different ambient spaces");
  Mat ineqs = a.inequalities();
  for (const Vec& h : b.inequalities()) ineqs.push_back(h);
  Mat eqs = a.equations();
  for (const Vec& e : b.equations()) eqs.push_back(e);
  return from_inequalities(a.ambient_dim(), ineqs, eqs);
}

/// Dual with respect to the intersection form of signature (1, n-1):
/// { x : pairing(x, g) >= 0 for every generator g }.
inline Cone dual_wrt_pairing(const Cone& c) {
  Mat rows;
  for (const Vec& g : c.rays()) {
    Vec r = g;
    for (std::size_t i = 1; i < r.size(); ++i) r[i] = -r[i];
    rows.push_back(r);
  }
  return from_inequalities(c.ambient_dim(), rows, {});
}

namespace detail {

/// Raysets (as bitmasks over pointed rays) of all proper faces of a pointed
/// cone, including the zero face; computed as the closure of the facet
/// raysets under intersection.  Sorted by (size, mask).
inline std::vector<Bits> proper_face_masks(const Cone& c) {
  if (!c.is_pointed()) fail("NotPointed", "face enumeration requires a strictly convex cone");
  std::vector<Bits> result;
  if (c.dim() == 0) return result;
  const Mat& rays = c.pointed_rays();
  std::vector<Bits> facet_masks;
  for (const Vec& h : c.inequalities()) {
    Bits b = bits_make(rays.size());
    for (std::size_t i = 0; i < rays.size(); ++i)
      if (dot(h, rays[i]) == 0) bits_set(b, i);
    facet_masks.push_back(std::move(b));
  }
  std::set<Bits> seen;
  std::vector<Bits> work(facet_masks);
  while (!work.empty()) {
    Bits t = work.back();
    work.pop_back();
    if (!seen.insert(t).second) continue;
    for (const Bits& f : facet_masks) {
      Bits u = bits_and(t, f);
      if (!seen.count(u)) work.push_back(std::move(u));
    }
  }
  result.assign(seen.begin(), seen.end());
  auto popcount = [](const Bits& b) {
    std::size_t c2 = 0;
    for (auto w : b) c2 += static_cast<std::size_t>(__builtin_popcountll(w));
    return c2;
  };
  std::sort(result.begin(), result.end(), [&](const Bits& x, const Bits& y) {
    std::size_t px = popcount(x), py = popcount(y);
    if (px != py) return px < py;
    return x < y;
  });
  return result;
}

inline Mat mask_rays(const Cone& c, const Bits& mask) {
  Mat rays;
  for (std::size_t i = 0; i < c.pointed_rays().size(); ++i)
    if (mask[i / 64] & (std::uint64_t{1} << (i % 64))) rays.push_back(c.pointed_rays()[i]);
  return rays;
}

} // namespace detail

/// All proper faces of a strictly convex cone, including the zero cone,
/// excluding the cone itself.  The zero cone has no proper faces.
inline std::vector<Cone> proper_faces(const Cone& c) {
  std::vector<Cone> out;
  for (const detail::Bits& mask : detail::proper_face_masks(c))
    out.push_back(from_rays(c.ambient_dim(), detail::mask_rays(c, mask)));
  return out;
}

/// rel.int(C1) subseteq rel.int(C2).  Containment of generators plus one
/// relative-interior point test; the zero cone is a subset by convention.
inline bool relint_subset(const Cone& c1, const Cone& c2) {
  if (c1.ambient_dim() != c2.ambient_dim())
    fail("DimensionMismatch", "relint_subset of cones in different ambient spaces");
  if (c1.is_zero()) return true;
  for (const Vec& g : c1.rays())
    if (!contains(c2, g)) return false;
  return in_rel_interior(c2, rel_interior_point(c1));
}

/// rel.int(C) disjoint from F.  A convex subset of the relative boundary of
/// C lies inside a single facet hyperplane, so the test is: C is not a
/// subspace and the intersection with F is annihilated by one facet
/// functional of C.
inline bool relint_disjoint(const Cone& c, const Cone& f) {
  if (c.ambient_dim() != f.ambient_dim())
    fail("DimensionMismatch", "relint_disjoint of cones in different ambient spaces");
  if (c.pointed_rays().empty()) return false; // subspace: 0 lies in both
  Cone i = intersect(c, f);
  Mat gens = i.rays();
  for (const Vec& h : c.inequalities()) {
    bool all_zero = true;
    for (const Vec& g : gens)
      if (dot(h, g) != 0) { all_zero = false; break; }
    if (all_zero) return true;
  }
  return false;
}

/// Open subdivision of a strictly convex cone along r in C: the cones
/// Cone(F, r) over proper faces F (including the zero face) that do not lie
/// in any proper face of C.  Their relative interiors partition rel.int(C).
inline std::vector<Cone> open_subdivision(const Cone& c, const Vec& r) {
  check_vector(c, r);
  if (!c.is_pointed()) fail("NotPointed", "subdivision requires a strictly convex cone");
  if (is_zero(r) || !contains(c, r)) fail("RayNotInCone", "subdivision ray must be a nonzero element of the cone");
  std::vector<detail::Bits> masks = detail::proper_face_masks(c);
  // Facets tight at r, as raysets.
  std::vector<detail::Bits> tight;
  for (const Vec& h : c.inequalities()) {
    if (dot(h, r) != 0) continue;
    detail::Bits b = detail::bits_make(c.pointed_rays().size());
    for (std::size_t i = 0; i < c.pointed_rays().size(); ++i)
      if (dot(h, c.pointed_rays()[i]) == 0) detail::bits_set(b, i);
    tight.push_back(std::move(b));
  }
  std::vector<Cone> out;
  for (const detail::Bits& mask : masks) {
    bool buried = false;
    for (const detail::Bits& t : tight)
      if (detail::bits_subset(mask, t)) { buried = true; break; }
    if (buried) continue;
    Mat rays = detail::mask_rays(c, mask);
    rays.push_back(r);
    out.push_back(from_rays(c.ambient_dim(), rays));
  }
  return out;
}

namespace detail {

/// Pulling triangulation: lists of extreme rays of simplicial subcones that
/// cover the pointed cone with disjoint interiors.
inline void triangulate_pointed(const Cone& c, std::vector<Mat>& out) {
  if (c.dim() == 0) return;
  if (c.dim() == 1 || c.pointed_rays().size() == c.dim()) {
    out.push_back(c.pointed_rays());
    return;
  }
  const Vec& r0 = c.pointed_rays()[0];
  for (const Vec& h : c.inequalities()) {
    if (dot(h, r0) == 0) continue;
    Mat face_rays;
    for (const Vec& r : c.pointed_rays())
      if (dot(h, r) == 0) face_rays.push_back(r);
    Cone face = from_rays(c.ambient_dim(), face_rays);
    std::vector<Mat> sub;
    triangulate_pointed(face, sub);
    for (Mat& s : sub) {
      s.push_back(r0);
      out.push_back(std::move(s));
    }
  }
}

inline Int factorial(std::size_t k) {
  Int f = 1;
  for (std::size_t i = 2; i <= k; ++i) f *= Int(i);
  return f;
}

} // namespace detail

/// Exact normalized (dim-1)-volume of the slice { x in C : f.x = 1 },
/// measured against the lattice of span(C) intersected with ker(f).
/// Requires f strictly positive on C minus the origin.
inline Rat section_volume(const Cone& c, const Vec& f) {
  check_vector(c, f);
  if (!c.lineality().empty())
    fail("UnboundedSection", "level functional vanishes on the lineality space");
  if (c.dim() == 0) return Rat(0);
  for (const Vec& r : c.pointed_rays())
    if (dot(f, r) <= 0)
      fail("UnboundedSection", "level functional not strictly positive on a ray");
  const std::size_t d = c.dim();
  if (d == 1) return Rat(1);
  Mat cut = c.equations();
  cut.push_back(f);
  Mat w = kernel_basis(cut, c.ambient_dim()); // lattice basis of span(C) ∩ ker f
  if (w.size() != d - 1) fail("InternalError", "unexpected slice lattice dimension");
  QMat gram(w.size(), QVec(w.size()));
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = 0; j < w.size(); ++j) gram[i][j] = Rat(dot(w[i], w[j]));
  std::vector<Mat> simplices;
  detail::triangulate_pointed(c, simplices);
  Rat vol = 0;
  for (const Mat& s : simplices) {
    QMat edges; // coordinates of v_i - v_0 in the slice lattice
    QVec v0 = to_qvec(s[0]);
    Rat f0 = Rat(dot(f, s[0]));
    for (std::size_t t = 0; t < v0.size(); ++t) v0[t] /= f0;
    for (std::size_t i = 1; i < s.size(); ++i) {
      QVec vi = to_qvec(s[i]);
      Rat fi = Rat(dot(f, s[i]));
      QVec u(vi.size());
      for (std::size_t t = 0; t < vi.size(); ++t) u[t] = vi[t] / fi - v0[t];
      QVec rhs(w.size(), Rat(0));
      for (std::size_t j = 0; j < w.size(); ++j)
        for (std::size_t t = 0; t < u.size(); ++t) rhs[j] += Rat(w[j][t]) * u[t];
      auto sol = rat_solve(gram, rhs);
      if (!sol) fail("InternalError", "slice edge outside the slice lattice span");
      edges.push_back(*sol);
    }
    Rat dv = det_q(edges);
    if (dv < 0) dv = -dv;
    vol += dv;
  }
  return vol / Rat(detail::factorial(d - 1));
}

/// Exact volume of the union of slices via inclusion-exclusion.  Pieces of
/// dimension lower than the join of the inputs contribute zero.  Throws
/// CapExceeded when 2^k - 1 exceeds `cap`.
inline Rat union_section_volume(const std::vector<Cone>& cones, const Vec& f,
                                std::size_t cap = 4096) {
  if (cones.empty()) return Rat(0);
  const std::size_t k = cones.size();
  if (k >= 63 || ((std::uint64_t{1} << k) - 1) > cap)
    fail("CapExceeded", "inclusion-exclusion term count exceeds the cap");
  const std::size_t n = cones[0].ambient_dim();
  Mat all_gens;
  for (const Cone& c : cones) {
    if (c.ambient_dim() != n) fail("DimensionMismatch", "union of cones in different ambient spaces");
    if (!c.lineality().empty())
      fail("UnboundedSection", "level functional vanishes on a lineality space");
    for (const Vec& r : c.pointed_rays()) {
      if (dot(f, r) <= 0)
        fail("UnboundedSection", "level functional not strictly positive on a ray");
      all_gens.push_back(r);
    }
  }
  const std::size_t d = n - kernel_basis(all_gens, n).size();
  std::map<std::uint64_t, Cone> memo;
  Rat total = 0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
    std::uint64_t low = mask & (~mask + 1);
    std::size_t low_idx = 0;
    while (!((low >> low_idx) & 1)) ++low_idx;
    Cone piece = (mask == low) ? cones[low_idx] : intersect(memo.at(mask ^ low), cones[low_idx]);
    memo.emplace(mask, piece);
    if (piece.dim() < d) continue;
    Rat v = section_volume(piece, f);
    if (__builtin_popcountll(mask) % 2 == 1)
      total += v;
    else
      total -= v;
  }
  return total;
}

} // namespace delpezzo
