#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <delpezzo/delpezzo.hpp>

#include "oracles.hpp"

using namespace delpezzo;

namespace {

int failures = 0;

void report(int n, const std::string& what, bool ok) {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << n << ": " << what << std::endl;
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Vec lmE(int m, std::initializer_list<int> subtracted, Int lcoeff = 1) {
  Vec v(m + 1, Int(0));
  v[0] = lcoeff;
  for (int i : subtracted) v[i] = v[i] - 1;
  return v;
}

bool cone_equals_by_mutual_containment(const Cone& a, const Cone& b) {
  for (const Vec& r : a.rays())
    if (!contains(b, r)) return false;
  for (const Vec& r : b.rays())
    if (!contains(a, r)) return false;
  return a.dim() == b.dim();
}

// --- criterion 1: verdict booleans and compatible labels -------------------

bool criterion1() {
  auto t0 = std::chrono::steady_clock::now();
  SurfaceType s3 = new_surface(3);
  Contraction c3 = standard_contraction(s3);
  auto col = collection({make_cuspcubic(s3, c3, {3, 4, 5, 6})});
  Cone b3 = cone_representative(s3, parse_cone_label("B(3)"));
  bool ok = !is_polar_on(col, b3);
  ok = ok && is_complete_on(col, b3);
  ok = ok && is_transversal(col);
  ok = ok && !is_generically_flexible_on(col, b3);
  for (bool flag : {false, true}) {
    auto reps = compatible_representatives(s3, col, flag);
    ok = ok && reps.size() == 2 && label_name(reps[0]) == "B(2)" &&
         label_name(reps[1]) == "C(2)";
  }
  SurfaceType s4 = new_surface(4);
  auto col4 = collection({make_cuspcubic(s4, standard_contraction(s4), {2, 3, 4, 5})});
  ok = ok && is_generically_flexible_on(col4, cone_representative(s4, parse_cone_label("B(1)")));
  return ok && seconds_since(t0) < 5.0;
}

// --- criterion 2: degree-1 line-pair collection ----------------------------

bool criterion2() {
  auto t0 = std::chrono::steady_clock::now();
  SurfaceType s = new_surface(1);
  Contraction c = standard_contraction(s);
  auto col = collection({make_lines(s, c, 7), make_lines(s, c, 8)});
  Mat pol_expected, forb_expected;
  for (int i = 1; i <= 6; ++i) pol_expected.push_back(lmE(8, {i}));
  pol_expected.push_back(lmE(8, {7, 8}));
  for (int i = 1; i <= 8; ++i) pol_expected.push_back(class_E(8, i).c);
  forb_expected.push_back(lmE(8, {7, 8}));
  for (int i = 1; i <= 8; ++i) forb_expected.push_back(class_E(8, i).c);
  bool ok = cone_equals_by_mutual_containment(col.pol, from_rays(9, pol_expected));
  ok = ok && cone_equals_by_mutual_containment(col.forb, from_rays(9, forb_expected));
  ok = ok && is_generically_flexible_on(col, col.pol);
  return ok && seconds_since(t0) < 30.0;
}

// --- criterion 3: degree-1 tangent-pencil collection ------------------------

bool criterion3() {
  SurfaceType s = new_surface(1);
  Contraction c = standard_contraction(s);
  auto col = collection({make_tangent(s, c, {4, 5, 6, 7, 8}, {3}, {{1}, {2}})});
  std::set<Vec> expected;
  for (int i = 1; i <= 8; ++i) expected.insert(class_E(8, i).c);
  expected.insert(lmE(8, {3}));
  expected.insert(lmE(8, {1}, 2));
  expected.insert(lmE(8, {2}, 2));
  expected.insert(lmE(8, {4, 5, 6, 7, 8}, 2));
  auto rays = col.pol.rays();
  bool ok = std::set<Vec>(rays.begin(), rays.end()) == expected;
  ok = ok && is_generically_flexible_on(col, col.pol);
  return ok;
}

// --- criterion 4: weak degree-6 configurations ------------------------------

bool criterion4() {
  bool ok = true;
  {
    DegenerationData d;
    d.collinear_triples = {{1, 2, 3}};
    SurfaceType s = new_surface(6, d);
    Contraction c = standard_contraction(s);
    Cone amp = ample_cone(s);
    ok = ok && amp == from_rays(4, {lmE(3, {}), lmE(3, {1}), lmE(3, {2}), lmE(3, {3})});
    std::vector<DivisorClass> comp = {class_E(3, 1), class_E(3, 2), class_E(3, 3)};
    auto supp = comp;
    for (int i = 1; i <= 3; ++i) supp.push_back(DivisorClass{lmE(3, {i})});
    auto col = collection({make_generic(s, c, comp, supp, class_L(3), Transversality::yes)});
    ok = ok && is_generically_flexible_on(col, amp);
  }
  {
    DegenerationData d;
    d.infinitely_near = {{2, 1}};
    SurfaceType s = new_surface(6, d);
    Contraction c = standard_contraction(s);
    Cone amp = ample_cone(s);
    ok = ok && amp == from_rays(4, {lmE(3, {}), lmE(3, {1}), lmE(3, {3}), lmE(3, {1, 2}, 2),
                                    lmE(3, {1, 2, 3}, 2)});
    auto D = [](Vec v) { return DivisorClass{std::move(v)}; };
    Vec e12 = vec_sub(class_E(3, 1).c, class_E(3, 2).c);
    std::vector<DivisorClass> comp1 = {D(lmE(3, {1, 2})), D(e12), class_E(3, 2), class_E(3, 3)};
    auto supp1 = comp1;
    supp1.push_back(D(lmE(3, {})));
    supp1.push_back(D(lmE(3, {3})));
    std::vector<DivisorClass> comp2 = {class_E(3, 3), D(e12), D(lmE(3, {1, 3})),
                                       D(lmE(3, {1, 2}))};
    auto supp2 = comp2;
    supp2.push_back(D(lmE(3, {3})));
    supp2.push_back(D(lmE(3, {1, 2, 3}, 2)));
    auto col =
        collection({make_generic(s, c, comp1, supp1, D(lmE(3, {})), Transversality::yes),
                    make_generic(s, c, comp2, supp2, D(lmE(3, {1, 2, 3}, 2)),
                                 Transversality::yes)});
    ok = ok && is_generically_flexible_on(col, amp);
  }
  return ok;
}

// --- criterion 5: subdivisions partition the relative interior ---------------

bool criterion5() {
  struct Case {
    Cone parent;
    Vec vertex_ray;
  };
  std::vector<Case> cases;
  for (int degree : {5, 3}) {
    SurfaceType s = new_surface(degree);
    cases.push_back({ne_cone(s), anticanonical(s.m).c});
    Vec lm(s.m + 1, Int(0));
    lm[0] = 1;
    lm[s.m] = -1;
    cases.push_back({cone_representative(s, parse_cone_label("C")), lm});
  }
  std::mt19937_64 rng(987654321u);
  for (const Case& cs : cases) {
    std::vector<Cone> members = open_subdivision(cs.parent, cs.vertex_ray);
    for (int trial = 0; trial < 1000; ++trial) {
      Vec p(cs.parent.ambient_dim(), Int(0));
      for (const Vec& r : cs.parent.pointed_rays()) {
        Int coeff = Int(1 + rng() % 1000);
        for (std::size_t i = 0; i < p.size(); ++i) p[i] += coeff * r[i];
      }
      int hits = 0;
      for (const Cone& member : members)
        if (in_rel_interior(member, p)) ++hits;
      if (hits != 1) return false;
    }
  }
  return true;
}

// --- criterion 6: negative-curve tables vs brute-force oracle ----------------

bool criterion6() {
  const std::size_t expected_counts[] = {0, 1, 3, 6, 10, 16, 27, 56, 240};
  for (int m = 1; m <= 8; ++m) {
    auto found = oracle::minus_one_box_search(m);
    if (found.size() != expected_counts[m]) return false;
    Mat universe_rows = class_rows(classic_minus_one_universe(m));
    if (std::set<Vec>(found.begin(), found.end()) !=
        std::set<Vec>(universe_rows.begin(), universe_rows.end()))
      return false;
    if (m >= 2 && new_surface(9 - m).minus_one.size() != expected_counts[m]) return false;
  }
  struct DegenCase {
    int degree;
    DegenerationData data;
    Mat expected_minus_two;
  };
  std::vector<DegenCase> cases;
  {
    DegenerationData d;
    d.collinear_triples = {{1, 2, 3}};
    cases.push_back({6, d, {lmE(3, {1, 2, 3})}});
  }
  {
    DegenerationData d;
    d.infinitely_near = {{2, 1}};
    cases.push_back({6, d, {vec_sub(class_E(3, 1).c, class_E(3, 2).c)}});
  }
  {
    DegenerationData d;
    d.conic_sixes = {{1, 2, 3, 4, 5, 6}};
    cases.push_back({3, d, {lmE(6, {1, 2, 3, 4, 5, 6}, 2)}});
  }
  {
    DegenerationData d;
    d.cusp_cubics = {{1, {2, 3, 4, 5, 6, 7, 8}}};
    Vec v = lmE(8, {2, 3, 4, 5, 6, 7, 8}, 3);
    v[1] = -2;
    cases.push_back({1, d, {v}});
  }
  for (const DegenCase& cs : cases) {
    SurfaceType s = new_surface(cs.degree, cs.data);
    if (class_rows(s.minus_two) != cs.expected_minus_two) return false;
    // The (-1)-list must be the brute-force universe filtered by nonnegative
    // pairing against every declared (-2)-class.
    std::set<Vec> weak;
    for (const Vec& v : oracle::minus_one_box_search(s.m)) {
      bool keep = true;
      for (const Vec& f : cs.expected_minus_two)
        keep = keep && pairing(DivisorClass{v}, DivisorClass{f}) >= 0;
      if (keep) weak.insert(v);
    }
    auto rows = class_rows(s.minus_one);
    if (std::set<Vec>(rows.begin(), rows.end()) != weak) return false;
  }
  return true;
}

// --- criterion 7: duality involution and membership agreement ----------------

bool criterion7() {
  std::mt19937_64 rng(271828182u);
  for (std::size_t n = 2; n <= 9; ++n) {
    for (int rep = 0; rep < 100; ++rep) {
      std::size_t k = 1 + rng() % (n + 2);
      Mat gens;
      for (std::size_t i = 0; i < k; ++i) {
        Vec g(n);
        for (std::size_t j = 0; j < n; ++j) g[j] = Int(static_cast<long>(rng() % 5)) - 2;
        gens.push_back(g);
      }
      Cone c = from_rays(n, gens);
      if (dual_wrt_pairing(dual_wrt_pairing(c)) != c) return false;
      // Generators satisfy the inequality description exactly.
      for (const Vec& g : gens) {
        for (const Vec& h : c.inequalities())
          if (dot(h, g) < 0) return false;
        for (const Vec& e : c.equations())
          if (dot(e, g) != 0) return false;
        if (!contains(c, g)) return false;
      }
      // Membership agreement with an independent LP oracle on mixed probes.
      for (int probe = 0; probe < 5; ++probe) {
        Vec p(n, Int(0));
        if (probe < 2) {
          for (const Vec& g : gens) {
            Int coeff = Int(static_cast<long>(rng() % 4));
            for (std::size_t j = 0; j < n; ++j) p[j] += coeff * g[j];
          }
        } else {
          for (std::size_t j = 0; j < n; ++j) p[j] = Int(static_cast<long>(rng() % 7)) - 3;
        }
        if (contains(c, p) != oracle::in_cone_lp(gens, p)) return false;
      }
    }
  }
  return true;
}

// --- criterion 8: exact covered fraction of the parameter square -------------

bool criterion8() {
  auto region_ray = [](Rat a1, Rat a2) {
    QVec q(8);
    q[0] = 3;
    q[1] = a1 - 1;
    q[2] = a2 - 1;
    for (int i = 3; i <= 7; ++i) q[i] = -1;
    return clear_denominators(q);
  };
  auto region_cone = [&](const std::vector<std::pair<Rat, Rat>>& pts) {
    Mat rays;
    for (const auto& [a1, a2] : pts) rays.push_back(region_ray(a1, a2));
    return from_rays(8, rays);
  };
  Rat h(1, 2), one(1), zero(0);
  std::vector<std::vector<std::pair<Rat, Rat>>> polygons = {
      {{one, h}, {one, one}, {zero, one}},
      {{one, zero}, {one, one}, {h, one}},
      {{h, h}, {one, h}, {one, one}, {h, one}},
  };
  std::vector<Cone> cones;
  for (const auto& poly : polygons) cones.push_back(region_cone(poly));
  Vec f(8, Int(0));
  f[3] = -1;
  Rat lib = union_section_volume(cones, f);
  std::vector<oracle::Poly> oracle_polys;
  for (const auto& poly : polygons) {
    oracle::Poly p;
    for (const auto& [a1, a2] : poly) p.push_back({a1, a2});
    oracle_polys.push_back(p);
  }
  Rat independent = oracle::union_area(oracle_polys);
  return lib == Rat(3, 8) && independent == Rat(3, 8) && lib == independent;
}

// --- criterion 9: CLI determinism and cache parity ---------------------------

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(DPFLEX_CLI_PATH) + " " + args + " 2>&1";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, got);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

bool criterion9() {
  const std::vector<std::string> cmds = {
      "surface --degree 3 --no-cache",
      "surface --degree 3 --no-cache --format json",
      "curves --degree 2 --no-cache --format json",
      "cones --degree 5 --cone NE --no-cache",
      "cones --degree 3 --cone 'B(2)' --no-cache --format json",
      "check --degree 3 --construction cuspcubic:3,4,5,6 --cone 'B(3)' --no-cache",
      "check --degree 3 --construction cuspcubic:3,4,5,6 --cone 'B(2)' --no-cache --format json",
      "cover --degree 6 --cone Ample --construction lines --volume --no-cache --format json",
  };
  for (const std::string& cmd : cmds) {
    auto a = run_cli(cmd);
    auto b = run_cli(cmd);
    if (a.exit_code != 0 || b.exit_code != 0 || a.output != b.output) return false;
  }
  std::string tmpl = (std::filesystem::temp_directory_path() / "dpflexXXXXXX").string();
  if (!mkdtemp(tmpl.data())) return false;
  std::string base = "curves --degree 4 --format json --cache-dir " + tmpl;
  auto cold = run_cli(base);
  auto warm = run_cli(base);
  auto off = run_cli(base + " --no-cache");
  bool wrote_entry = !std::filesystem::is_empty(tmpl);
  std::filesystem::remove_all(tmpl);
  return cold.exit_code == 0 && warm.exit_code == 0 && off.exit_code == 0 &&
         cold.output == warm.output && cold.output == off.output && wrote_entry;
}

}  // namespace

int main() {
  report(1, "collection verdicts and compatible cone labels on degrees 3 and 4", criterion1());
  report(2, "degree-1 line-pair polarity and forbidden cones with flexibility", criterion2());
  report(3, "degree-1 tangent-pencil polarity cone rays with flexibility", criterion3());
  report(4, "weak degree-6 ample cones and flexible collections", criterion4());
  report(5, "open subdivisions partition relative interiors (1000 points each)", criterion5());
  report(6, "negative-curve tables match the brute-force oracle", criterion6());
  report(7, "duality involution and membership agreement on random cones", criterion7());
  report(8, "covered fraction of the parameter square equals 3/8 exactly", criterion8());
  report(9, "CLI determinism and cache parity", criterion9());
  return failures == 0 ? 0 : 1;
}
