#include <catch2/catch_amalgamated.hpp>
#include <delpezzo/delpezzo.hpp>

#include <set>

using namespace delpezzo;

namespace {

std::set<Vec> ray_set(const Cone& c) {
  auto r = c.rays();
  return {r.begin(), r.end()};
}

Vec L(int m) { return class_L(m).c; }
Vec E(int m, int i) { return class_E(m, i).c; }

CylinderCollection deg3_cusp() {
  SurfaceType s = new_surface(3);
  return collection({make_cuspcubic(s, standard_contraction(s), {3, 4, 5, 6})});
}

}  // namespace

TEST_CASE("collection caches the intersection of polarity cones") {
  SurfaceType s = new_surface(6);
  Contraction c = standard_contraction(s);
  Cylinder u1 = make_lines(s, c, 1);
  Cylinder u2 = make_lines(s, c, 2);
  auto col = collection({u1, u2});
  CHECK(col.pol == intersect(pol_cone(u1), pol_cone(u2)));
  // Forbidden cone: classes in every member's complement (none movable here).
  std::set<Vec> expect = {E(3, 1), E(3, 2), E(3, 3), class_Lij(3, 1, 2).c};
  CHECK(ray_set(col.forb) == expect);
  CHECK(col.size() == 2);
  CHECK(same_surface(col.surface(), s));
}

TEST_CASE("collections refuse mixed surfaces") {
  SurfaceType a = new_surface(6);
  SurfaceType b = new_surface(5);
  CHECK_THROWS_AS(collection({make_lines(a, standard_contraction(a), 1),
                              make_lines(b, standard_contraction(b), 1)}),
                  Error);
}

TEST_CASE("empty collections") {
  CylinderCollection empty = collection({});
  CHECK(empty.empty());
  CHECK_THROWS_AS(empty.surface(), Error);
  // Polarity over the ambient cone is vacuous, completeness impossible.
  SurfaceType s = new_surface(6);
  Cone b1 = cone_representative(s, parse_cone_label("B(1)"));
  CHECK(is_polar_on(empty, b1));
  CHECK_FALSE(is_complete_on(empty, b1));
  CHECK_FALSE(is_transversal(empty));
  CHECK_FALSE(is_generically_flexible_on(empty, b1));
}

TEST_CASE("verdict quartet on the degree-3 cuspidal collection") {
  auto col = deg3_cusp();
  SurfaceType s = col.surface();
  Cone b3 = cone_representative(s, parse_cone_label("B(3)"));
  Cone b2 = cone_representative(s, parse_cone_label("B(2)"));
  CHECK_FALSE(is_polar_on(col, b3));
  CHECK(is_polar_on(col, b2));
  CHECK(is_complete_on(col, b3));
  CHECK(is_transversal(col));
  CHECK_FALSE(is_generically_flexible_on(col, b3));
  CHECK(is_generically_flexible_on(col, b2));
  // Polarity on the zero cone is vacuously true.
  CHECK(is_polar_on(col, zero_cone(7)));
}

TEST_CASE("completeness needs an ample-class witness inside the forbidden cone") {
  // Two line pencils on degree 1: the forbidden cone meets the span of the
  // polarity cone, but no ample class lies in both, so the collection stays
  // complete on its polarity cone.
  SurfaceType s = new_surface(1);
  Contraction c = standard_contraction(s);
  auto col = collection({make_lines(s, c, 7), make_lines(s, c, 8)});
  std::set<Vec> polrays;
  for (int j = 1; j <= 8; ++j) polrays.insert(E(8, j));
  for (int j = 1; j <= 6; ++j) polrays.insert(vec_sub(L(8), E(8, j)));
  polrays.insert(Vec{1, 0, 0, 0, 0, 0, 0, -1, -1});
  CHECK(ray_set(col.pol) == polrays);
  std::set<Vec> forbrays;
  for (int j = 1; j <= 8; ++j) forbrays.insert(E(8, j));
  forbrays.insert(Vec{1, 0, 0, 0, 0, 0, 0, -1, -1});
  CHECK(ray_set(col.forb) == forbrays);
  // The sum of the polarity generators lies in the relative interior of pol
  // and inside forb, yet it is not ample; completeness must still hold.
  Vec witness(9, Int(0));
  for (const Vec& r : col.pol.pointed_rays()) witness = vec_add(witness, r);
  CHECK(in_rel_interior(col.pol, witness));
  CHECK(contains(col.forb, witness));
  CHECK(is_complete_on(col, col.pol));
  CHECK(is_generically_flexible_on(col, col.pol));
}

TEST_CASE("transversality rules") {
  SurfaceType s = new_surface(6);
  Contraction c = standard_contraction(s);
  auto lines1 = collection({make_lines(s, c, 1)});
  CHECK_FALSE(is_transversal(lines1));
  // Two pencils with different centers under one contraction fire the pair rule.
  CHECK(is_transversal(collection({make_lines(s, c, 1), make_lines(s, c, 2)})));
  // A single transversal member suffices.
  SurfaceType s3 = new_surface(3);
  Contraction c3 = standard_contraction(s3);
  CHECK(is_transversal(collection({make_lines(s3, c3, 1),
                                   make_cuspcubic(s3, c3, {3, 4, 5, 6})})));
  // Same center twice does not.
  CHECK_FALSE(is_transversal(collection({make_lines(s, c, 1), make_lines(s, c, 1)})));
}

TEST_CASE("subdivision-cone catalog") {
  SurfaceType s3 = new_surface(3);
  auto labels = cone_types(s3);
  REQUIRE(labels.size() == 16);
  std::vector<std::string> names;
  for (const auto& l : labels) names.push_back(label_name(l));
  CHECK(names == std::vector<std::string>{"B(0)", "B(1)", "B(2)", "B(3)", "B(4)", "B(5)", "B(6)",
                                          "B(P)", "C", "C(0)", "C(1)", "C(2)", "C(3)", "C(4)",
                                          "C(5)", "C(P)"});
  for (const auto& l : labels) CHECK(parse_cone_label(label_name(l)) == l);

  SECTION("representative shapes") {
    SurfaceType s2 = new_surface(2);
    CHECK(ray_set(cone_representative(s2, parse_cone_label("B(2)"))) ==
          std::set<Vec>{anticanonical(7).c, E(7, 1), E(7, 2)});
    CHECK(ray_set(cone_representative(s3, parse_cone_label("B(0)"))) ==
          std::set<Vec>{anticanonical(6).c});
    CHECK(ray_set(cone_representative(s3, parse_cone_label("B(P)"))) ==
          std::set<Vec>{anticanonical(6).c, E(6, 1), E(6, 2), E(6, 3), E(6, 4),
                        class_Lij(6, 5, 6).c});
    std::set<Vec> cexp;
    for (int j = 1; j <= 5; ++j) cexp.insert(E(6, j));
    for (int j = 1; j <= 5; ++j) cexp.insert(class_Lij(6, j, 6).c);
    Cone cc = cone_representative(s3, parse_cone_label("C"));
    CHECK(ray_set(cc) == cexp);
    // The anticanonical class is not a member of C.
    CHECK_FALSE(contains(cc, anticanonical(6).c));
    std::set<Vec> cp = {anticanonical(6).c, E(6, 1), E(6, 2), E(6, 3), E(6, 4),
                        class_Lij(6, 5, 6).c, vec_sub(L(6), E(6, 6))};
    CHECK(ray_set(cone_representative(s3, parse_cone_label("C(P)"))) == cp);
    std::set<Vec> ck = {anticanonical(6).c, E(6, 1), vec_sub(L(6), E(6, 6))};
    CHECK(ray_set(cone_representative(s3, parse_cone_label("C(1)"))) == ck);
  }
  SECTION("label parsing errors") {
    CHECK_THROWS_AS(parse_cone_label("A(1)"), Error);
    CHECK_THROWS_AS(parse_cone_label("B"), Error);
    CHECK_THROWS_AS(parse_cone_label("B(x)"), Error);
    CHECK_THROWS_AS(parse_cone_label("B(1"), Error);
    CHECK_THROWS_AS(cone_representative(s3, parse_cone_label("B(7)")), Error);
    CHECK_THROWS_AS(cone_representative(s3, parse_cone_label("C(6)")), Error);
  }
  SECTION("B-family representatives appear in the subdivision of the Mori cone") {
    SurfaceType s5 = new_surface(5);
    auto subd = open_subdivision(ne_cone(s5), anticanonical(4).c);
    for (const char* name : {"B(0)", "B(1)", "B(4)", "B(P)"}) {
      Cone rep = cone_representative(s5, parse_cone_label(name));
      bool found = false;
      for (const Cone& member : subd) found = found || member == rep;
      CHECK(found);
    }
  }
}

TEST_CASE("cylinder sweeps") {
  SECTION("degree 6 line pencils dedupe to six") {
    SurfaceType s = new_surface(6);
    auto col = all_cylinders(s, {ConstructionTag::lines});
    CHECK(col.size() == 6);
    // Every member is a lines cylinder over some contraction; signatures all differ.
    std::set<std::pair<std::set<Vec>, Vec>> sigs;
    for (const Cylinder& u : col.cylinders) {
      CHECK(u.construction == ConstructionTag::lines);
      std::set<Vec> comp;
      for (const auto& d : u.complement) comp.insert(d.c);
      sigs.insert({comp, u.fiber.c});
    }
    CHECK(sigs.size() == 6);
  }
  SECTION("degree 5 cuspidal cubics collapse to one") {
    SurfaceType s = new_surface(5);
    auto col = all_cylinders(s, {ConstructionTag::cuspcubic});
    REQUIRE(col.size() == 1);
    const Cylinder& u = col.cylinders.front();
    CHECK(u.fiber.c == Vec{6, -2, -2, -2, -2});
    std::set<Vec> expect = {anticanonical(4).c, Vec{2, -1, -1, -1, -1}};
    for (int i = 1; i <= 4; ++i) expect.insert(vec_sub(L(4), E(4, i)));
    std::set<Vec> comp;
    for (const auto& d : u.complement) comp.insert(d.c);
    CHECK(comp == expect);
  }
  SECTION("empty tag set yields the empty collection") {
    CHECK(all_cylinders(new_surface(6), {}).empty());
  }
  SECTION("generic cannot be swept") {
    CHECK_THROWS_AS(all_cylinders(new_surface(6), {ConstructionTag::generic}), Error);
  }
}

TEST_CASE("polar filtering") {
  SurfaceType s = new_surface(3);
  Contraction c = standard_contraction(s);
  Cylinder lines1 = make_lines(s, c, 1);
  Cylinder cusp = make_cuspcubic(s, c, {3, 4, 5, 6});
  auto col = collection({lines1, cusp});
  Cone b2 = cone_representative(s, parse_cone_label("B(2)"));
  auto kept = make_polar_on(col, b2);
  REQUIRE(kept.size() == 1);
  CHECK(kept.cylinders.front().construction == ConstructionTag::cuspcubic);
  // Keeping is exactly relative-interior containment per member.
  for (const Cylinder& u : col.cylinders) {
    bool keep = relint_subset(b2, pol_cone(u));
    bool present = false;
    for (const Cylinder& k : kept.cylinders)
      present = present || (k.complement == u.complement && k.fiber.c == u.fiber.c);
    CHECK(keep == present);
  }
  // The zero cone keeps everything; filtering an empty collection is empty.
  CHECK(make_polar_on(col, zero_cone(7)).size() == col.size());
  CHECK(make_polar_on(collection({}), b2).empty());
}

TEST_CASE("reduction keeps both cached cones") {
  SurfaceType s = new_surface(6);
  Contraction c = standard_contraction(s);
  Cylinder u1 = make_lines(s, c, 1);
  SECTION("duplicates are removed") {
    auto col = collection({u1, u1});
    auto red = reduce(col);
    CHECK(red.size() == 1);
    CHECK(red.pol == col.pol);
    CHECK(red.forb == col.forb);
  }
  SECTION("members carrying distinct forbidden parts are kept") {
    auto col = collection({u1, make_lines(s, c, 2)});
    auto red = reduce(col);
    CHECK(red.size() == 2);
    CHECK(red.forb == col.forb);
    CHECK(red.pol == col.pol);
  }
  SECTION("a singleton stays") {
    auto col = collection({u1});
    CHECK(reduce(col).size() == 1);
  }
  SECTION("reduction is idempotent on a full sweep") {
    auto col = all_cylinders(s, {ConstructionTag::lines});
    auto red = reduce(col);
    CHECK(red.pol == col.pol);
    CHECK(red.forb == col.forb);
    auto red2 = reduce(red);
    CHECK(red2.size() == red.size());
  }
}

TEST_CASE("compatible representatives") {
  auto col = deg3_cusp();
  SurfaceType s = col.surface();
  for (bool flag : {false, true}) {
    auto reps = compatible_representatives(s, col, flag);
    REQUIRE(reps.size() == 2);
    CHECK(label_name(reps[0]) == "B(2)");
    CHECK(label_name(reps[1]) == "C(2)");
  }
  // The returned labels are exactly those whose representative passes the
  // polarity (and, when required, completeness) predicates.
  for (bool flag : {false, true}) {
    auto reps = compatible_representatives(s, col, flag);
    for (const ConeLabel& l : cone_types(s)) {
      Cone rep = cone_representative(s, l);
      bool expect = is_polar_on(col, rep) && (!flag || is_complete_on(col, rep));
      bool present = false;
      for (const ConeLabel& r : reps) present = present || r == l;
      CHECK(present == expect);
    }
  }
  // An empty collection is polar everywhere.
  CHECK(compatible_representatives(s, collection({}), false).size() == 16);
}

TEST_CASE("coverage fractions") {
  SurfaceType s2 = new_surface(2);
  Contraction c2 = standard_contraction(s2);
  // Parameter-square regions realized as polarity cones of generic cylinders.
  auto region_col = [&](const std::vector<QVec>& pts) {
    std::vector<DivisorClass> supp;
    for (const QVec& q : pts) {
      QVec full(8);
      full[0] = 3;
      full[1] = q[0] - 1;
      full[2] = q[1] - 1;
      for (int i = 3; i <= 7; ++i) full[i] = -1;
      supp.push_back(DivisorClass{clear_denominators(full)});
    }
    return collection({make_generic(s2, c2, supp, supp, anticanonical(7),
                                    Transversality::unknown)});
  };
  Rat h(1, 2), one(1), zero(0);
  auto r1 = region_col({{one, h}, {zero, one}, {one, one}});
  auto r2 = region_col({{h, one}, {one, zero}, {one, one}});
  auto r3 = region_col({{h, h}, {one, h}, {h, one}, {one, one}});
  auto sq_col = region_col({{zero, zero}, {one, zero}, {zero, one}, {one, one}});
  Cone square = sq_col.pol;
  Vec f(8, Int(0));
  f[3] = -1;
  CHECK(coverage_fraction(s2, square, {r1, r2, r3}, f) == Rat(3, 8));
  // The whole square covers itself.
  CHECK(coverage_fraction(s2, square, {sq_col}, f) == Rat(1));
  // Nothing to cover with: zero.
  CHECK(coverage_fraction(s2, square, {}, f) == Rat(0));
  // Zero-dimensional targets have no slice to cover.
  CHECK(coverage_fraction(s2, zero_cone(8), {r1}, f) == Rat(0));
}

TEST_CASE("weak degree-6 flexibility certificates") {
  SECTION("three collinear points") {
    DegenerationData d;
    d.collinear_triples = {{1, 2, 3}};
    SurfaceType s = new_surface(6, d);
    Contraction c = standard_contraction(s);
    std::vector<DivisorClass> comp = {class_E(3, 1), class_E(3, 2), class_E(3, 3)};
    std::vector<DivisorClass> supp = comp;
    for (int i = 1; i <= 3; ++i)
      supp.push_back(DivisorClass{vec_sub(L(3), E(3, i))});
    auto col = collection({make_generic(s, c, comp, supp, class_L(3), Transversality::yes)});
    Cone amp = ample_cone(s);
    CHECK(is_polar_on(col, amp));
    CHECK(is_complete_on(col, amp));
    CHECK(is_generically_flexible_on(col, amp));
    CHECK(ray_set(col.forb) == std::set<Vec>{E(3, 1), E(3, 2), E(3, 3)});
  }
  SECTION("infinitely near pair") {
    DegenerationData d;
    d.infinitely_near = {{2, 1}};
    SurfaceType s = new_surface(6, d);
    Contraction c = standard_contraction(s);
    auto D = [](Vec v) { return DivisorClass{std::move(v)}; };
    Vec l = L(3), e1 = E(3, 1), e2 = E(3, 2), e3 = E(3, 3);
    Vec l12 = vec_sub(vec_sub(l, e1), e2);
    Vec e12 = vec_sub(e1, e2);
    Vec conic = vec_sub(vec_sub(vec_sub(vec_add(l, l), e1), e2), e3);
    std::vector<DivisorClass> comp1 = {D(l12), D(e12), D(e2), D(e3)};
    auto supp1 = comp1;
    supp1.push_back(D(l));
    supp1.push_back(D(vec_sub(l, e3)));
    std::vector<DivisorClass> comp2 = {D(e3), D(e12), D(vec_sub(vec_sub(l, e1), e3)), D(l12)};
    auto supp2 = comp2;
    supp2.push_back(D(vec_sub(l, e3)));
    supp2.push_back(D(conic));
    auto col = collection({make_generic(s, c, comp1, supp1, D(l), Transversality::yes),
                           make_generic(s, c, comp2, supp2, D(conic), Transversality::yes)});
    Cone amp = ample_cone(s);
    CHECK(is_generically_flexible_on(col, amp));
    CHECK(ray_set(col.pol) ==
          std::set<Vec>{e3, e12, l12, vec_sub(l, e1), vec_sub(l, e3)});
    CHECK(ray_set(col.forb) == std::set<Vec>{l12, e12, e3});
  }
}
