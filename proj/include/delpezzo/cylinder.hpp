#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "delpezzo/surface.hpp"

namespace delpezzo {

enum class ConstructionTag { lines, tangent, cuspcubic, generic };
enum class Transversality { yes, no, unknown };

inline std::string construction_name(ConstructionTag t) {
  switch (t) {
    case ConstructionTag::lines: return "lines";
    case ConstructionTag::tangent: return "tangent";
    case ConstructionTag::cuspcubic: return "cuspcubic";
    default: return "generic";
  }
}

/// A cylinder on the surface, recorded through divisor-class data: the
/// classes of the removed curves (complement), the classes spanning the
/// polarity cone (support), the fibration class, and construction metadata.
/// `movable` marks complement classes that vary within the construction's
/// paired family and therefore do not contribute to forbidden cones.
struct Cylinder {
  SurfaceType surface;
  Contraction contraction;
  std::vector<DivisorClass> complement;
  std::vector<DivisorClass> support;
  std::vector<DivisorClass> movable;
  DivisorClass fiber;
  BubbleClass fiber_bubble;
  ConstructionTag construction = ConstructionTag::generic;
  Transversality transversal = Transversality::unknown;
};

namespace detail {

inline std::vector<DivisorClass> sorted_unique(std::vector<DivisorClass> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline void check_contraction(const SurfaceType& s, const Contraction& c) {
  if (c.exceptional_classes.size() != static_cast<std::size_t>(s.m))
    fail("LengthMismatch", "contraction size does not match the surface");
  for (const DivisorClass& e : c.exceptional_classes)
    if (e.c.size() != static_cast<std::size_t>(s.m + 1))
      fail("LengthMismatch", "contraction class does not match the surface lattice");
}

} // namespace detail

/// Pencil of lines through the i-th blown-up point of the contraction.
inline Cylinder make_lines(const SurfaceType& s, const Contraction& c, int i) {
  detail::check_contraction(s, c);
  if (i < 1 || i > s.m) fail("IndexOutOfRange", "line pencil center index outside 1..m");
  Cylinder u;
  u.surface = s;
  u.contraction = c;
  const DivisorClass& ei = c.exceptional_classes[i - 1];
  for (const DivisorClass& e : c.exceptional_classes) u.complement.push_back(e);
  for (int j = 1; j <= s.m; ++j) {
    if (j == i) continue;
    u.complement.push_back(c.line_class - ei - c.exceptional_classes[j - 1]);
  }
  u.complement = detail::sorted_unique(u.complement);
  u.support = u.complement;
  u.fiber = c.line_class - ei;
  u.fiber_bubble.base = c.line_class;
  u.fiber_bubble.multiplicities[i] = -1;
  u.construction = ConstructionTag::lines;
  u.transversal = Transversality::no;
  return u;
}

/// Conic-plus-tangent construction: a fixed conic through `conic_points`, a
/// moving tangent line through `tangent_points`, and moving fiber conics
/// through the point groups (unlisted points count as singleton groups).
inline Cylinder make_tangent(const SurfaceType& s, const Contraction& c,
                             const std::vector<int>& conic_points,
                             const std::vector<int>& tangent_points,
                             const std::vector<std::vector<int>>& fiber_groups) {
  detail::check_contraction(s, c);
  std::set<int> used;
  auto claim = [&](int i, const char* what) {
    if (i < 1 || i > s.m) fail("IndexOutOfRange", std::string(what) + " index outside 1..m");
    if (!used.insert(i).second)
      fail("OverlappingSets", std::string(what) + " reuses a point of another set");
  };
  for (int i : conic_points) claim(i, "conic");
  for (int i : tangent_points) claim(i, "tangent line");
  for (const auto& g : fiber_groups)
    for (int i : g) claim(i, "fiber group");
  std::size_t conditions = (conic_points.empty() ? 0 : conic_points.size() - 1) +
                           tangent_points.size();
  for (const auto& g : fiber_groups) conditions += g.empty() ? 0 : g.size() - 1;
  if (conditions > 5)
    fail("TooManyConditions", "a conic pencil admits at most 5 independent point conditions");

  std::vector<std::vector<int>> groups = fiber_groups;
  for (int j = 1; j <= s.m; ++j)
    if (!used.count(j)) groups.push_back({j});

  auto through = [&](Int mult, const std::vector<int>& pts) {
    DivisorClass d = mult * c.line_class;
    for (int i : pts) d = d - c.exceptional_classes[i - 1];
    return d;
  };
  Cylinder u;
  u.surface = s;
  u.contraction = c;
  DivisorClass conic = through(2, conic_points);
  DivisorClass tangent = through(1, tangent_points);
  u.complement.push_back(conic);
  u.complement.push_back(tangent);
  u.movable.push_back(tangent);
  for (const auto& g : groups) {
    DivisorClass d = through(2, g);
    u.complement.push_back(d);
    u.movable.push_back(d);
  }
  for (const DivisorClass& e : c.exceptional_classes) u.complement.push_back(e);
  u.complement = detail::sorted_unique(u.complement);
  u.movable = detail::sorted_unique(u.movable);
  u.support = u.complement;
  u.fiber = 2 * c.line_class;
  u.fiber_bubble.base = u.fiber;
  u.fiber_bubble.multiplicities[-1] = -1; // moving tangency point
  u.construction = ConstructionTag::tangent;
  u.transversal = Transversality::yes;
  return u;
}

/// Cuspidal-cubic construction on degrees 2..5: an anticanonical cuspidal
/// curve, a conic through the four chosen points, and the four lines from
/// the cusp; the pencil of sextics gives the fibration.
inline Cylinder make_cuspcubic(const SurfaceType& s, const Contraction& c,
                               const std::vector<int>& four) {
  detail::check_contraction(s, c);
  if (s.degree < 2 || s.degree > 5)
    fail("WrongDegree", "cuspidal-cubic construction requires degree 2..5");
  if (s.degree == 2 && !s.admits_cuspidal_anticanonical)
    fail("WrongDegree",
         "degree-2 construction requires the admits_cuspidal_anticanonical flag");
  std::set<int> fs(four.begin(), four.end());
  if (four.size() != 4 || fs.size() != 4)
    fail("BadSubset", "exactly four distinct points required");
  for (int i : four)
    if (i < 1 || i > s.m) fail("BadSubset", "point index outside 1..m");
  Cylinder u;
  u.surface = s;
  u.contraction = c;
  DivisorClass antik = anticanonical(s.m);
  DivisorClass conic = 2 * c.line_class;
  for (int i : fs) conic = conic - c.exceptional_classes[i - 1];
  u.complement.push_back(antik);
  u.complement.push_back(conic);
  u.movable.push_back(antik);
  u.movable.push_back(conic);
  for (int i : fs) {
    DivisorClass d = c.line_class - c.exceptional_classes[i - 1];
    u.complement.push_back(d);
    u.movable.push_back(d);
  }
  for (int j = 1; j <= s.m; ++j)
    if (!fs.count(j)) u.complement.push_back(c.exceptional_classes[j - 1]);
  u.complement = detail::sorted_unique(u.complement);
  u.movable = detail::sorted_unique(u.movable);
  u.support = u.complement;
  u.fiber = 6 * c.line_class;
  for (int i : fs) u.fiber = u.fiber - 2 * c.exceptional_classes[i - 1];
  u.fiber_bubble.base = 6 * c.line_class;
  u.fiber_bubble.multiplicities[-1] = -2; // moving cusp point
  for (int i : fs) u.fiber_bubble.multiplicities[i] = -1;
  u.construction = ConstructionTag::cuspcubic;
  u.transversal = Transversality::yes;
  return u;
}

/// Caller-described cylinder: data is stored verbatim.
inline Cylinder make_generic(const SurfaceType& s, const Contraction& c,
                             const std::vector<DivisorClass>& complement,
                             const std::vector<DivisorClass>& support, const DivisorClass& fiber,
                             Transversality transversal) {
  detail::check_contraction(s, c);
  for (const DivisorClass& d : complement)
    if (d.c.size() != static_cast<std::size_t>(s.m + 1))
      fail("LengthMismatch", "complement class does not match the surface lattice");
  for (const DivisorClass& d : support)
    if (d.c.size() != static_cast<std::size_t>(s.m + 1))
      fail("LengthMismatch", "support class does not match the surface lattice");
  if (fiber.c.size() != static_cast<std::size_t>(s.m + 1))
    fail("LengthMismatch", "fiber class does not match the surface lattice");
  std::vector<DivisorClass> comp = detail::sorted_unique(complement);
  std::vector<DivisorClass> supp = detail::sorted_unique(support);
  for (const DivisorClass& d : comp)
    if (!std::binary_search(supp.begin(), supp.end(), d))
      fail("SupportMismatch", "every complement class must appear in the support");
  Cylinder u;
  u.surface = s;
  u.contraction = c;
  u.complement = std::move(comp);
  u.support = std::move(supp);
  u.fiber = fiber;
  u.fiber_bubble.base = fiber;
  u.construction = ConstructionTag::generic;
  u.transversal = transversal;
  return u;
}

/// Polarity cone: spanned by the support classes.
inline Cone pol_cone(const Cylinder& u) {
  return from_rays(u.surface.m + 1, class_rows(u.support));
}

} // namespace delpezzo
