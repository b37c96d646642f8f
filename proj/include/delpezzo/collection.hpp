#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "delpezzo/cylinder.hpp"

namespace delpezzo {

/// Ordered cylinder list with cached polarity and forbidden cones.
/// pol = intersection of the members' polarity cones; forb = cone on the
/// classes fixed in every member's complement (movable classes excluded).
struct CylinderCollection {
  std::vector<Cylinder> cylinders;
  Cone pol;
  Cone forb;

  bool empty() const { return cylinders.empty(); }
  std::size_t size() const { return cylinders.size(); }
  const SurfaceType& surface() const {
    if (cylinders.empty()) fail("InternalError", "empty collection has no surface");
    return cylinders.front().surface;
  }
};

inline CylinderCollection collection(const std::vector<Cylinder>& cs) {
  CylinderCollection col;
  col.cylinders = cs;
  if (cs.empty()) return col;
  for (const Cylinder& u : cs)
    if (!same_surface(u.surface, cs.front().surface))
      fail("MixedSurfaces", "all cylinders of a collection must share the surface");
  const std::size_t n = cs.front().surface.m + 1;
  Mat ineqs, eqs;
  std::vector<DivisorClass> fixed;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    Cone pc = pol_cone(cs[i]);
    for (const Vec& h : pc.inequalities()) ineqs.push_back(h);
    for (const Vec& e : pc.equations()) eqs.push_back(e);
    std::vector<DivisorClass> fix;
    for (const DivisorClass& d : cs[i].complement)
      if (!std::binary_search(cs[i].movable.begin(), cs[i].movable.end(), d)) fix.push_back(d);
    if (i == 0) {
      fixed = fix;
    } else {
      std::vector<DivisorClass> inter;
      std::set_intersection(fixed.begin(), fixed.end(), fix.begin(), fix.end(),
                            std::back_inserter(inter));
      fixed = std::move(inter);
    }
  }
  col.pol = from_inequalities(n, ineqs, eqs);
  col.forb = from_rays(n, class_rows(fixed));
  return col;
}

/// H-polarity over a whole cone: rel.int(K) inside rel.int(pol).
inline bool is_polar_on(const CylinderCollection& col, const Cone& k) {
  if (col.empty()) return true; // pol of the empty collection is the ambient space
  return relint_subset(k, col.pol);
}

/// H-completeness over a whole cone: no polarization in rel.int(K) — i.e.
/// no strictly ample class there — lies in the forbidden cone.  Decided
/// exactly through the relative interior point of
/// W = K ∩ forb ∩ { pairing with every negative curve ≥ 0 }.
inline bool is_complete_on(const CylinderCollection& col, const Cone& k) {
  if (col.empty()) return relint_disjoint(k, full_cone(k.ambient_dim()));
  const SurfaceType& s = col.surface();
  if (k.ambient_dim() != static_cast<std::size_t>(s.m + 1))
    fail("DimensionMismatch", "cone does not live in the surface lattice");
  Mat ineqs = k.inequalities();
  for (const Vec& h : col.forb.inequalities()) ineqs.push_back(h);
  Mat curve_rows;
  for (const DivisorClass& d : s.minus_one) curve_rows.push_back(pairing_row(d));
  for (const DivisorClass& d : s.minus_two) curve_rows.push_back(pairing_row(d));
  for (const Vec& r : curve_rows) ineqs.push_back(r);
  Mat eqs = k.equations();
  for (const Vec& e : col.forb.equations()) eqs.push_back(e);
  Cone w = from_inequalities(k.ambient_dim(), ineqs, eqs);
  Vec z = rel_interior_point(w);
  if (!in_rel_interior(k, z)) return true;
  for (const Vec& r : curve_rows)
    if (dot(r, z) <= 0) return true;
  return false;
}

/// Transversality: a member certified transversal, or two line pencils with
/// the same contraction and distinct centers.
inline bool is_transversal(const CylinderCollection& col) {
  for (const Cylinder& u : col.cylinders)
    if (u.transversal == Transversality::yes) return true;
  for (std::size_t i = 0; i < col.cylinders.size(); ++i)
    for (std::size_t j = i + 1; j < col.cylinders.size(); ++j) {
      const Cylinder& a = col.cylinders[i];
      const Cylinder& b = col.cylinders[j];
      if (a.construction == ConstructionTag::lines && b.construction == ConstructionTag::lines &&
          a.contraction == b.contraction && a.fiber != b.fiber)
        return true;
    }
  return false;
}

inline bool is_generically_flexible_on(const CylinderCollection& col, const Cone& k) {
  return is_polar_on(col, k) && is_complete_on(col, k) && is_transversal(col);
}

/// Subdivision-cone labels: B(0..m), B(P), C, C(0..m-1), C(P).
struct ConeLabel {
  enum class Kind { B, C } kind = Kind::B;
  enum class Marker { number, P, bare } marker = Marker::number;
  int index = 0;
};

inline bool operator==(const ConeLabel& a, const ConeLabel& b) {
  return a.kind == b.kind && a.marker == b.marker &&
         (a.marker != ConeLabel::Marker::number || a.index == b.index);
}
inline bool operator!=(const ConeLabel& a, const ConeLabel& b) { return !(a == b); }

inline std::string label_name(const ConeLabel& l) {
  std::string base = l.kind == ConeLabel::Kind::B ? "B" : "C";
  switch (l.marker) {
    case ConeLabel::Marker::bare: return base;
    case ConeLabel::Marker::P: return base + "(P)";
    default: return base + "(" + std::to_string(l.index) + ")";
  }
}

inline ConeLabel parse_cone_label(const std::string& text) {
  ConeLabel l;
  if (text.empty() || (text[0] != 'B' && text[0] != 'C'))
    fail("UnknownLabel", "cone label must start with B or C: " + text);
  l.kind = text[0] == 'B' ? ConeLabel::Kind::B : ConeLabel::Kind::C;
  if (text.size() == 1) {
    if (l.kind != ConeLabel::Kind::C) fail("UnknownLabel", "bare label is only valid for C");
    l.marker = ConeLabel::Marker::bare;
    return l;
  }
  if (text.size() < 3 || text[1] != '(' || text.back() != ')')
    fail("UnknownLabel", "malformed cone label: " + text);
  std::string inner = text.substr(2, text.size() - 3);
  if (inner == "P") {
    l.marker = ConeLabel::Marker::P;
    return l;
  }
  if (inner.empty() || inner.find_first_not_of("0123456789") != std::string::npos)
    fail("UnknownLabel", "malformed cone label index: " + text);
  l.marker = ConeLabel::Marker::number;
  l.index = std::stoi(inner);
  return l;
}

inline std::vector<ConeLabel> cone_types(const SurfaceType& s) {
  std::vector<ConeLabel> out;
  for (int k = 0; k <= s.m; ++k) out.push_back({ConeLabel::Kind::B, ConeLabel::Marker::number, k});
  out.push_back({ConeLabel::Kind::B, ConeLabel::Marker::P, 0});
  out.push_back({ConeLabel::Kind::C, ConeLabel::Marker::bare, 0});
  for (int k = 0; k <= s.m - 1; ++k)
    out.push_back({ConeLabel::Kind::C, ConeLabel::Marker::number, k});
  out.push_back({ConeLabel::Kind::C, ConeLabel::Marker::P, 0});
  return out;
}

/// Standard-contraction representative of a labeled subdivision cone.
inline Cone cone_representative(const SurfaceType& s, const ConeLabel& l) {
  const int m = s.m;
  Mat rays;
  auto antik = anticanonical(m).c;
  auto e = [&](int i) { return class_E(m, i).c; };
  auto lij = [&](int i, int j) { return class_Lij(m, i, j).c; };
  if (l.kind == ConeLabel::Kind::B) {
    if (l.marker == ConeLabel::Marker::bare) fail("UnknownLabel", "bare label is only valid for C");
    rays.push_back(antik);
    if (l.marker == ConeLabel::Marker::P) {
      for (int i = 1; i <= m - 2; ++i) rays.push_back(e(i));
      rays.push_back(lij(m - 1, m));
    } else {
      if (l.index < 0 || l.index > m) fail("UnknownLabel", "B(k) requires 0 <= k <= m");
      for (int i = 1; i <= l.index; ++i) rays.push_back(e(i));
    }
  } else {
    if (l.marker == ConeLabel::Marker::bare) {
      for (int i = 1; i <= m - 1; ++i) rays.push_back(e(i));
      for (int i = 1; i <= m - 1; ++i) rays.push_back(lij(i, m));
    } else if (l.marker == ConeLabel::Marker::P) {
      rays.push_back(antik);
      for (int i = 1; i <= m - 2; ++i) rays.push_back(e(i));
      rays.push_back(lij(m - 1, m));
      Vec lm(m + 1, 0);
      lm[0] = 1;
      lm[m] = -1;
      rays.push_back(lm);
    } else {
      if (l.index < 0 || l.index > m - 1) fail("UnknownLabel", "C(k) requires 0 <= k <= m-1");
      rays.push_back(antik);
      for (int i = 1; i <= l.index; ++i) rays.push_back(e(i));
      Vec lm(m + 1, 0);
      lm[0] = 1;
      lm[m] = -1;
      rays.push_back(lm);
    }
  }
  return from_rays(m + 1, rays);
}

namespace detail {

struct CylinderSignature {
  std::vector<Vec> complement;
  std::vector<Vec> support;
  Vec fiber;
  friend bool operator<(const CylinderSignature& a, const CylinderSignature& b) {
    return std::tie(a.complement, a.support, a.fiber) < std::tie(b.complement, b.support, b.fiber);
  }
  friend bool operator==(const CylinderSignature& a, const CylinderSignature& b) {
    return a.complement == b.complement && a.support == b.support && a.fiber == b.fiber;
  }
};

inline CylinderSignature signature_of(const Cylinder& u) {
  CylinderSignature s;
  for (const DivisorClass& d : u.complement) s.complement.push_back(d.c);
  for (const DivisorClass& d : u.support) s.support.push_back(d.c);
  s.fiber = u.fiber.c;
  return s;
}

inline bool contraction_less(const Contraction& a, const Contraction& b) {
  return a.exceptional_classes < b.exceptional_classes;
}

/// Set partitions of `points` whose grouping cost sum(|g|-1) stays within
/// `budget`; emitted through the callback.
template <typename F>
inline void for_each_partition(const std::vector<int>& points, std::size_t budget, F&& emit) {
  std::vector<std::vector<int>> groups;
  std::size_t cost = 0;
  auto rec = [&](auto&& self, std::size_t next) -> void {
    if (next == points.size()) {
      emit(groups);
      return;
    }
    int p = points[next];
    for (std::size_t g = 0; g < groups.size(); ++g) {
      if (cost + 1 > budget) continue;
      groups[g].push_back(p);
      cost += 1;
      self(self, next + 1);
      cost -= 1;
      groups[g].pop_back();
    }
    groups.push_back({p});
    self(self, next + 1);
    groups.pop_back();
  };
  rec(rec, 0);
}

} // namespace detail

/// Sweep of all construction instances over all contractions, deduplicated
/// by the (complement, support, fiber) signature in canonical order.  The
/// candidate count scales with the Weyl group order while the distinct count
/// stays small, so duplicates are dropped as they arise; ties keep the
/// candidate with the smallest construction tag, then contraction.
inline CylinderCollection all_cylinders(const SurfaceType& s,
                                        const std::set<ConstructionTag>& tags) {
  for (ConstructionTag t : tags)
    if (t == ConstructionTag::generic)
      fail("InvalidConfiguration", "generic cylinders cannot be swept");
  std::map<detail::CylinderSignature, Cylinder> seen;
  auto offer = [&](Cylinder u) {
    detail::CylinderSignature sig = detail::signature_of(u);
    auto [it, inserted] = seen.try_emplace(std::move(sig), std::move(u));
    if (inserted) return;
    Cylinder& held = it->second;
    if (u.construction != held.construction
            ? static_cast<int>(u.construction) < static_cast<int>(held.construction)
            : detail::contraction_less(u.contraction, held.contraction))
      held = std::move(u);
  };
  detail::for_each_contraction(s, [&](const Contraction& c) {
    if (tags.count(ConstructionTag::lines))
      for (int i = 1; i <= s.m; ++i) offer(make_lines(s, c, i));
    if (tags.count(ConstructionTag::cuspcubic) && s.degree >= 2 && s.degree <= 5 &&
        (s.degree != 2 || s.admits_cuspidal_anticanonical)) {
      std::vector<int> idx = {1, 2, 3, 4};
      while (true) {
        offer(make_cuspcubic(s, c, idx));
        int t = 3;
        while (t >= 0 && idx[t] == s.m - (3 - t)) --t;
        if (t < 0) break;
        ++idx[t];
        for (int q = t + 1; q < 4; ++q) idx[q] = idx[q - 1] + 1;
      }
    }
    if (tags.count(ConstructionTag::tangent)) {
      for (unsigned cmask = 0; cmask < (1u << s.m); ++cmask) {
        std::vector<int> conic;
        for (int i = 1; i <= s.m; ++i)
          if (cmask & (1u << (i - 1))) conic.push_back(i);
        std::size_t cost_c = conic.empty() ? 0 : conic.size() - 1;
        if (cost_c > 5) continue;
        unsigned rest = ((1u << s.m) - 1) & ~cmask;
        for (unsigned tmask = rest;; tmask = (tmask - 1) & rest) {
          std::vector<int> tang;
          for (int i = 1; i <= s.m; ++i)
            if (tmask & (1u << (i - 1))) tang.push_back(i);
          if (cost_c + tang.size() <= 5) {
            std::vector<int> leftover;
            for (int i = 1; i <= s.m; ++i)
              if (!(cmask & (1u << (i - 1))) && !(tmask & (1u << (i - 1)))) leftover.push_back(i);
            detail::for_each_partition(
                leftover, 5 - cost_c - tang.size(),
                [&](const std::vector<std::vector<int>>& groups) {
                  offer(make_tangent(s, c, conic, tang, groups));
                });
          }
          if (tmask == 0) break;
        }
      }
    }
  });
  std::vector<Cylinder> kept;
  kept.reserve(seen.size());
  for (auto& [sig, u] : seen) kept.push_back(std::move(u));
  return collection(kept);
}

/// Members whose own polarity cone makes them polar over K, order kept.
inline CylinderCollection make_polar_on(const CylinderCollection& col, const Cone& k) {
  std::vector<Cylinder> kept;
  for (const Cylinder& u : col.cylinders)
    if (relint_subset(k, pol_cone(u))) kept.push_back(u);
  return collection(kept);
}

/// Greedy removal of members that change neither pol nor forb.
inline CylinderCollection reduce(const CylinderCollection& col) {
  std::vector<Cylinder> members = col.cylinders;
  if (members.size() <= 1) return collection(members);
  std::size_t i = 0;
  while (i < members.size()) {
    std::vector<Cylinder> trial = members;
    trial.erase(trial.begin() + i);
    CylinderCollection without = collection(trial);
    if (without.pol == col.pol && without.forb == col.forb)
      members = std::move(trial);
    else
      ++i;
  }
  return collection(members);
}

/// Labels whose standard representative passes the polarity (and optionally
/// completeness) verdicts.
inline std::vector<ConeLabel> compatible_representatives(const SurfaceType& s,
                                                         const CylinderCollection& col,
                                                         bool require_complete) {
  std::vector<ConeLabel> out;
  for (const ConeLabel& l : cone_types(s)) {
    Cone k = cone_representative(s, l);
    if (!is_polar_on(col, k)) continue;
    if (require_complete && !is_complete_on(col, k)) continue;
    out.push_back(l);
  }
  return out;
}

/// Fraction of the target cone's slice covered by the collections' polarity
/// cones, at the level `pairing(x, -K) = 1` unless another functional is
/// given.  Exact rational arithmetic throughout.
inline Rat coverage_fraction(const SurfaceType& s, const Cone& target,
                             const std::vector<CylinderCollection>& cols,
                             const std::optional<Vec>& level = std::nullopt,
                             std::size_t cap = 4096) {
  Vec f = level ? *level : pairing_row(anticanonical(s.m));
  if (target.dim() == 0) return Rat(0);
  Rat denom = section_volume(target, f);
  std::vector<Cone> pieces;
  for (const CylinderCollection& col : cols) {
    Cone piece = col.empty() ? target : intersect(target, col.pol);
    if (piece.dim() == target.dim()) pieces.push_back(piece);
  }
  if (pieces.empty()) return Rat(0);
  return union_section_volume(pieces, f, cap) / denom;
}

} // namespace delpezzo
