#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "delpezzo/cone.hpp"
#include "delpezzo/divisor.hpp"

namespace delpezzo {

/// Declared degenerations of the blown-up point configuration.
/// Indices are 1-based labels of the blowup points.
struct DegenerationData {
  std::vector<std::vector<int>> collinear_triples;            ///< 3-subsets on a line
  std::vector<std::pair<int, int>> infinitely_near;           ///< (child, parent) pairs
  std::vector<std::vector<int>> conic_sixes;                  ///< 6-subsets on a conic
  std::vector<std::pair<int, std::vector<int>>> cusp_cubics;  ///< (node, 7-subset), m = 8 only

  bool empty() const {
    return collinear_triples.empty() && infinitely_near.empty() && conic_sixes.empty() &&
           cusp_cubics.empty();
  }
};

/// Order-normalized copy used for equality, hashing and cache keys.
inline DegenerationData canonical_degenerations(const DegenerationData& d) {
  DegenerationData c = d;
  for (auto& t : c.collinear_triples) std::sort(t.begin(), t.end());
  std::sort(c.collinear_triples.begin(), c.collinear_triples.end());
  std::sort(c.infinitely_near.begin(), c.infinitely_near.end());
  for (auto& s : c.conic_sixes) std::sort(s.begin(), s.end());
  std::sort(c.conic_sixes.begin(), c.conic_sixes.end());
  for (auto& cc : c.cusp_cubics) std::sort(cc.second.begin(), cc.second.end());
  std::sort(c.cusp_cubics.begin(), c.cusp_cubics.end());
  return c;
}

inline bool operator==(const DegenerationData& a, const DegenerationData& b) {
  DegenerationData ca = canonical_degenerations(a), cb = canonical_degenerations(b);
  return ca.collinear_triples == cb.collinear_triples && ca.infinitely_near == cb.infinitely_near &&
         ca.conic_sixes == cb.conic_sixes && ca.cusp_cubics == cb.cusp_cubics;
}
inline bool operator!=(const DegenerationData& a, const DegenerationData& b) { return !(a == b); }

/// Surface model: a blowup of the plane at m = 9 - degree points with the
/// declared degenerations.  Curve lists are derived and canonically ordered.
struct SurfaceType {
  int degree = 0;
  int m = 0;
  DegenerationData degenerations;
  std::vector<DivisorClass> minus_one;
  std::vector<DivisorClass> minus_two;
  DivisorClass K;                            ///< canonical class -(3L - sum E_i)
  bool admits_cuspidal_anticanonical = true; ///< degree-2 cuspidal flag
};

inline bool same_surface(const SurfaceType& a, const SurfaceType& b) {
  return a.degree == b.degree && a.degenerations == b.degenerations &&
         a.admits_cuspidal_anticanonical == b.admits_cuspidal_anticanonical;
}

/// The classic (-1)-class families on a blowup of the plane at m points;
/// the complete universe from which curve lists and contractions are drawn.
inline std::vector<DivisorClass> classic_minus_one_universe(int m) {
  if (m < 1 || m > 8) fail("InvalidDegree", "point count outside 1..8");
  std::vector<DivisorClass> out;
  auto subsets = [&](int k) {
    std::vector<std::vector<int>> all;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i + 1;
    if (k > m) return all;
    while (true) {
      all.push_back(idx);
      int t = k - 1;
      while (t >= 0 && idx[t] == m - (k - 1 - t)) --t;
      if (t < 0) break;
      ++idx[t];
      for (int s = t + 1; s < k; ++s) idx[s] = idx[s - 1] + 1;
    }
    return all;
  };
  auto add = [&](Int a, const std::vector<int>& doubles, const std::vector<int>& singles,
                 Int dmult = 2, Int smult = 1) {
    Vec v(m + 1, 0);
    v[0] = a;
    for (int i : doubles) v[i] = -dmult;
    for (int i : singles) v[i] = -smult;
    out.push_back(DivisorClass{v});
  };
  for (int i = 1; i <= m; ++i) out.push_back(class_E(m, i));
  for (const auto& s : subsets(2)) add(1, {}, s);
  for (const auto& s : subsets(5)) add(2, {}, s);
  if (m >= 7) {
    for (const auto& s : subsets(7))
      for (int i : s) {
        std::vector<int> rest;
        for (int j : s)
          if (j != i) rest.push_back(j);
        add(3, {i}, rest);
      }
  }
  if (m == 8) {
    for (const auto& s : subsets(3)) {
      std::vector<int> rest;
      for (int j = 1; j <= m; ++j)
        if (std::find(s.begin(), s.end(), j) == s.end()) rest.push_back(j);
      add(4, s, rest);
    }
    for (const auto& s : subsets(6)) {
      std::vector<int> rest;
      for (int j = 1; j <= m; ++j)
        if (std::find(s.begin(), s.end(), j) == s.end()) rest.push_back(j);
      add(5, s, rest);
    }
    for (int i = 1; i <= m; ++i) {
      std::vector<int> rest;
      for (int j = 1; j <= m; ++j)
        if (j != i) rest.push_back(j);
      add(6, {i}, rest, 3, 2);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

inline void check_index_range(int idx, int m, const std::string& where) {
  if (idx < 1 || idx > m) fail("InvalidConfiguration", where + ": point index out of range 1..m");
}

inline DivisorClass collinear_class(int m, const std::vector<int>& t) {
  Vec v(m + 1, 0);
  v[0] = 1;
  for (int i : t) v[i] = -1;
  return DivisorClass{v};
}

inline DivisorClass near_class(int m, int child, int parent) {
  Vec v(m + 1, 0);
  v[parent] = 1;
  v[child] = -1;
  return DivisorClass{v};
}

inline DivisorClass conic_class(int m, const std::vector<int>& s) {
  Vec v(m + 1, 0);
  v[0] = 2;
  for (int i : s) v[i] = -1;
  return DivisorClass{v};
}

inline DivisorClass cusp_class(int m, int node, const std::vector<int>& seven) {
  Vec v(m + 1, 0);
  v[0] = 3;
  v[node] = -2;
  for (int i : seven) v[i] = -1;
  return DivisorClass{v};
}

/// (child, parent) pairs must form forests: walking parents never cycles.
inline void check_near_forest(const std::vector<std::pair<int, int>>& pairs,
                              const std::string& where) {
  std::map<int, int> parent_of;
  for (const auto& [child, parent] : pairs) parent_of[child] = parent;
  for (const auto& [child, parent] : pairs) {
    std::set<int> seen{child};
    int cur = parent;
    while (true) {
      if (seen.count(cur))
        fail("InvalidConfiguration", where + ": infinitely-near pairs contain a cycle");
      seen.insert(cur);
      auto it = parent_of.find(cur);
      if (it == parent_of.end()) break;
      cur = it->second;
    }
  }
}

/// Validates declared degenerations structurally and builds the induced
/// irreducible (-2)-classes in canonical order.
inline std::vector<DivisorClass> degeneration_minus_two(int m, const DegenerationData& degen) {
  std::vector<DivisorClass> out;
  std::set<std::vector<int>> seen_triples;
  for (const auto& t : degen.collinear_triples) {
    if (t.size() != 3) fail("InvalidConfiguration", "collinear_triples: a triple must have 3 points");
    for (int i : t) check_index_range(i, m, "collinear_triples");
    std::vector<int> s = t;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      fail("InvalidConfiguration", "collinear_triples: repeated point in a triple");
    if (!seen_triples.insert(s).second)
      fail("InvalidConfiguration", "collinear_triples: duplicate triple");
    out.push_back(collinear_class(m, s));
  }
  std::set<int> children, parents;
  for (const auto& [child, parent] : degen.infinitely_near) {
    check_index_range(child, m, "infinitely_near");
    check_index_range(parent, m, "infinitely_near");
    if (child == parent)
      fail("InvalidConfiguration", "infinitely_near: a point cannot be near itself");
    if (!children.insert(child).second)
      fail("InvalidConfiguration", "infinitely_near: a point is near two different points");
    if (!parents.insert(parent).second)
      fail("InvalidConfiguration",
           "infinitely_near: at most one immediate infinitely-near successor per point");
    out.push_back(near_class(m, child, parent));
  }
  check_near_forest(degen.infinitely_near, "infinitely_near");
  std::set<std::vector<int>> seen_sixes;
  for (const auto& s6 : degen.conic_sixes) {
    if (s6.size() != 6) fail("InvalidConfiguration", "conic_sixes: a conic set must have 6 points");
    for (int i : s6) check_index_range(i, m, "conic_sixes");
    std::vector<int> s = s6;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      fail("InvalidConfiguration", "conic_sixes: repeated point in a conic set");
    if (!seen_sixes.insert(s).second) fail("InvalidConfiguration", "conic_sixes: duplicate set");
    out.push_back(conic_class(m, s));
  }
  std::set<std::pair<int, std::vector<int>>> seen_cusps;
  for (const auto& [node, seven] : degen.cusp_cubics) {
    if (m != 8) fail("InvalidConfiguration", "cusp_cubics: only allowed for degree 1 (m = 8)");
    check_index_range(node, m, "cusp_cubics");
    if (seven.size() != 7) fail("InvalidConfiguration", "cusp_cubics: the subset must have 7 points");
    for (int i : seven) check_index_range(i, m, "cusp_cubics");
    std::vector<int> s = seven;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      fail("InvalidConfiguration", "cusp_cubics: repeated point in the subset");
    if (std::find(s.begin(), s.end(), node) != s.end())
      fail("InvalidConfiguration", "cusp_cubics: the node must not lie in the 7-subset");
    if (!seen_cusps.insert({node, s}).second)
      fail("InvalidConfiguration", "cusp_cubics: duplicate entry");
    out.push_back(cusp_class(m, node, s));
  }
  // Pairwise rule: distinct irreducible (-2)-classes meet in 0 or 1 points.
  // This subsumes "no four points on a line", "no seven on a conic" and the
  // incidence clashes between different kinds of degenerations.
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = i + 1; j < out.size(); ++j) {
      Int p = pairing(out[i], out[j]);
      if (p < 0 || p > 1)
        fail("InvalidConfiguration",
             "pairwise intersection rule: classes " + pretty(out[i]) + " and " + pretty(out[j]) +
                 " meet with product " + p.str());
    }
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace detail

/// Builds and validates a surface model from a degree and degeneration data.
inline SurfaceType new_surface(int degree, const DegenerationData& degenerations = {},
                               bool admits_cuspidal_anticanonical = true) {
  if (degree < 1 || degree > 7) fail("InvalidDegree", "degree must lie in 1..7");
  SurfaceType s;
  s.degree = degree;
  s.m = 9 - degree;
  s.degenerations = canonical_degenerations(degenerations);
  s.admits_cuspidal_anticanonical = admits_cuspidal_anticanonical;
  s.K = -anticanonical(s.m);
  s.minus_two = detail::degeneration_minus_two(s.m, s.degenerations);
  for (const DivisorClass& d : classic_minus_one_universe(s.m)) {
    bool keep = true;
    for (const DivisorClass& f : s.minus_two)
      if (pairing(d, f) < 0) { keep = false; break; }
    if (keep) s.minus_one.push_back(d);
  }
  return s;
}

/// The anticanonical class 3L - sum E_i (the ample/nef generator used
/// throughout; the stored field K is its negative).
inline DivisorClass canonical_class(const SurfaceType& s) { return anticanonical(s.m); }

inline const std::vector<DivisorClass>& minus_one_curves(const SurfaceType& s) {
  return s.minus_one;
}
inline const std::vector<DivisorClass>& minus_two_curves(const SurfaceType& s) {
  return s.minus_two;
}

/// A contraction to the plane: an ordered tuple of pairwise-disjoint
/// (-1)-classes together with the induced line class.
struct Contraction {
  std::vector<DivisorClass> exceptional_classes;
  DivisorClass line_class;
};

inline bool operator==(const Contraction& a, const Contraction& b) {
  return a.exceptional_classes == b.exceptional_classes && a.line_class == b.line_class;
}
inline bool operator!=(const Contraction& a, const Contraction& b) { return !(a == b); }

namespace detail {

/// Line class (-K + sum e_i)/3 if integral.
inline bool induced_line(int m, const std::vector<DivisorClass>& excs, DivisorClass& line) {
  Vec sum = anticanonical(m).c;
  for (const DivisorClass& e : excs) sum = vec_add(sum, e.c);
  for (const Int& x : sum)
    if (x % 3 != 0) return false;
  Vec l(sum.size());
  for (std::size_t i = 0; i < sum.size(); ++i) l[i] = sum[i] / 3;
  line = DivisorClass{l};
  return true;
}

} // namespace detail

inline Contraction standard_contraction(const SurfaceType& s) {
  Contraction c;
  for (int i = 1; i <= s.m; ++i) c.exceptional_classes.push_back(class_E(s.m, i));
  c.line_class = class_L(s.m);
  return c;
}

/// Coordinates of D in the basis (line_class, e_1..e_m) of the contraction.
inline DivisorClass relabel(const DivisorClass& d, const Contraction& c) {
  Vec v(c.exceptional_classes.size() + 1);
  v[0] = pairing(d, c.line_class);
  for (std::size_t i = 0; i < c.exceptional_classes.size(); ++i)
    v[i + 1] = -pairing(d, c.exceptional_classes[i]);
  return DivisorClass{v};
}

/// Standard coordinates of the class whose (line, e_1..e_m)-coordinates are t.
inline DivisorClass in_contraction(const DivisorClass& t, const Contraction& c) {
  if (t.c.size() != c.exceptional_classes.size() + 1)
    fail("LengthMismatch", "coordinate tuple does not match the contraction");
  Vec v = vec_scale(t.c[0], c.line_class.c);
  for (std::size_t i = 0; i < c.exceptional_classes.size(); ++i)
    v = vec_add(v, vec_scale(t.c[i + 1], c.exceptional_classes[i].c));
  return DivisorClass{v};
}

namespace detail {

/// A (-2)-class is admissible for a contraction when its coordinates in that
/// basis again take one of the irreducible shapes with the line coefficient
/// oriented positively; returns the induced (child, parent) pair for the
/// infinitely-near shape so forests can be checked across all classes.
inline bool minus_two_shape_ok(const DivisorClass& t, int m, bool* is_near, int* child,
                               int* parent) {
  *is_near = false;
  const Int& t0 = t.c[0];
  int minus1 = 0, minus2 = 0, plus1 = 0, other = 0;
  int plus_pos = 0, minus_pos = 0, dbl_pos = 0;
  for (int i = 1; i <= m; ++i) {
    if (t.c[i] == 0) continue;
    if (t.c[i] == -1) { ++minus1; minus_pos = i; }
    else if (t.c[i] == 1) { ++plus1; plus_pos = i; }
    else if (t.c[i] == -2) { ++minus2; dbl_pos = i; }
    else ++other;
  }
  if (other != 0) return false;
  if (t0 == 1) return plus1 == 0 && minus2 == 0 && minus1 == 3;
  if (t0 == 0) {
    if (plus1 == 1 && minus1 == 1 && minus2 == 0) {
      *is_near = true;
      *child = minus_pos;
      *parent = plus_pos;
      (void)dbl_pos;
      return true;
    }
    return false;
  }
  if (t0 == 2) return plus1 == 0 && minus2 == 0 && minus1 == 6;
  if (t0 == 3) return m == 8 && plus1 == 0 && minus2 == 1 && minus1 == 7;
  return false;
}

/// Streams every valid contraction to the callback without materializing
/// the full list; the count grows with the Weyl group order, so sweeps over
/// low degrees must not hold all of them at once.
template <typename F>
inline void for_each_contraction(const SurfaceType& s, F&& visit) {
  std::vector<DivisorClass> universe = classic_minus_one_universe(s.m);
  const std::size_t u = universe.size();
  std::vector<std::vector<bool>> orth(u, std::vector<bool>(u));
  for (std::size_t i = 0; i < u; ++i)
    for (std::size_t j = 0; j < u; ++j) orth[i][j] = (i != j) && pairing(universe[i], universe[j]) == 0;

  std::vector<std::size_t> pick;
  std::vector<std::vector<std::size_t>> cand(s.m + 1);
  cand[0].resize(u);
  for (std::size_t i = 0; i < u; ++i) cand[0][i] = i;

  auto accept = [&]() {
    std::vector<DivisorClass> excs;
    for (std::size_t i : pick) excs.push_back(universe[i]);
    Contraction c;
    if (!detail::induced_line(s.m, excs, c.line_class)) return;
    c.exceptional_classes = std::move(excs);
    std::vector<std::pair<int, int>> near_pairs;
    for (const DivisorClass& f : s.minus_two) {
      DivisorClass t = relabel(f, c);
      bool is_near = false;
      int child = 0, parent = 0;
      if (!detail::minus_two_shape_ok(t, s.m, &is_near, &child, &parent)) return;
      if (is_near) near_pairs.emplace_back(child, parent);
    }
    if (!near_pairs.empty()) {
      try {
        detail::check_near_forest(near_pairs, "induced");
      } catch (const Error&) {
        return;
      }
    }
    visit(std::move(c));
  };

  // Depth-first search over index-increasing candidate lists keeps the
  // output in lexicographic order on the class tuples.
  auto dfs = [&](auto&& self, int depth) -> void {
    if (depth == s.m) {
      accept();
      return;
    }
    for (std::size_t idx : cand[depth]) {
      pick.push_back(idx);
      cand[depth + 1].clear();
      for (std::size_t j : cand[depth])
        if (orth[idx][j]) cand[depth + 1].push_back(j);
      self(self, depth + 1);
      pick.pop_back();
    }
  };
  dfs(dfs, 0);
}

} // namespace detail

/// All ordered m-tuples of pairwise-orthogonal classic (-1)-classes whose
/// induced line class is integral and for which every (-2)-class keeps an
/// irreducible shape in the new basis.  Canonically ordered.
inline std::vector<Contraction> enumerate_contractions(const SurfaceType& s) {
  std::vector<Contraction> out;
  detail::for_each_contraction(s, [&](Contraction c) { out.push_back(std::move(c)); });
  return out;
}

/// A divisor class with assigned multiplicities at (possibly symbolic)
/// points.  Declared blowup points have labels 1..m; symbolic extra points
/// carry negative labels and are never resolved.
struct BubbleClass {
  DivisorClass base;
  std::map<int, Int> multiplicities;
};

/// base + sum mult(p) * E_p over the declared points of the surface.
inline DivisorClass resolve_bubble_class(const SurfaceType& s, const BubbleClass& b) {
  if (b.base.c.size() != static_cast<std::size_t>(s.m + 1))
    fail("LengthMismatch", "bubble base class does not match the surface lattice");
  Vec v = b.base.c;
  for (const auto& [label, mult] : b.multiplicities) {
    if (label < 1 || label > s.m)
      fail("UnknownPoint", "bubble multiplicity at a point not declared on the surface");
    v[label] += mult;
  }
  return DivisorClass{v};
}

inline Mat class_rows(const std::vector<DivisorClass>& classes) {
  Mat rows;
  rows.reserve(classes.size());
  for (const DivisorClass& d : classes) rows.push_back(d.c);
  return rows;
}

/// Mori cone: generated by the negative curves (these surfaces have no
/// other extremal classes).
inline Cone ne_cone(const SurfaceType& s) {
  Mat rows = class_rows(s.minus_one);
  for (const DivisorClass& d : s.minus_two) rows.push_back(d.c);
  return from_rays(s.m + 1, rows);
}

inline Cone dual_wrt_pairing(const Cone& c, const SurfaceType& s) {
  if (c.ambient_dim() != static_cast<std::size_t>(s.m + 1))
    fail("DimensionMismatch", "cone does not live in the surface lattice");
  return dual_wrt_pairing(c);
}

/// Ample cone: dual of the Mori cone under the intersection form.
inline Cone ample_cone(const SurfaceType& s) { return dual_wrt_pairing(ne_cone(s), s); }

} // namespace delpezzo
