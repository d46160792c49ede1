#include <catch_amalgamated.hpp>

#include <schottky/constructions.hpp>
#include <schottky/geometry.hpp>

using namespace schottky;

TEST_CASE("reflections in generalized circles", "[geometry]") {
  auto unit = reflect_in(GenCircle::circle(0, 1));
  CHECK(unit.approx_equal(MoebiusMap(0, 1, 1, 0, Orientation::reversing)));
  CHECK(reflect_in(GenCircle::real_axis()).approx_equal(MoebiusMap::conjugation()));

  auto f = reflect_in(GenCircle::circle(3, 1));
  CHECK(std::abs(f(2) - Complex(2)) < 1e-12);
  CHECK(std::abs(f(4) - Complex(4)) < 1e-12);
  CHECK(std::abs(f(Complex(5, 0)) - Complex(3.5, 0)) < 1e-12);
}

TEST_CASE("images of circles", "[geometry]") {
  auto unit = GenCircle::circle(0, 1);
  auto inv  = MoebiusMap(0, 1, 1, 0);  // z -> 1/z
  CHECK(map_circle(inv, unit).approx_equal(unit));
  CHECK(map_circle(MoebiusMap::translation(2), unit)
            .approx_equal(GenCircle::circle(2, 1)));
  auto img = map_circle(reflect_in(unit), GenCircle::circle(3, 1));
  CHECK(img.approx_equal(GenCircle::circle(3.0 / 8, 1.0 / 8)));
  // lines through the center of inversion stay lines
  auto l = map_circle(reflect_in(unit), GenCircle::real_axis());
  CHECK(l.is_line());
}

TEST_CASE("inversive product detects the configuration", "[geometry]") {
  auto a = GenCircle::circle(0, 1);
  CHECK(std::abs(inversive_product(a.form(), GenCircle::circle(5, 1).form())) > 1);
  CHECK(std::abs(inversive_product(a.form(), GenCircle::circle(1, 1).form())) < 1);
  CHECK(std::abs(inversive_product(a.form(), GenCircle::circle(std::sqrt(2.0), 1).form()))
        < 1e-12);  // orthogonal
}

TEST_CASE("checker rejects overlapping circles", "[geometry]") {
  CircleSystem s;
  auto         c1 = GenCircle::circle(0, 1), c2 = GenCircle::circle(1, 1);
  s.add_pair(c1, c2, MoebiusMap::translation(1));
  s.basepoint = ProjectivePoint::infinity();
  auto r      = verify_schottky_system(s);
  CHECK_FALSE(r.passed);
  CHECK(r.condition == "disjointness");
}

TEST_CASE("checker rejects a map that does not pair its circles", "[geometry]") {
  CircleSystem s;
  auto         c1 = GenCircle::circle(-3, 1), c2 = GenCircle::circle(3, 1);
  s.add_pair(c1, c2, MoebiusMap::translation(5));
  s.basepoint = ProjectivePoint::infinity();
  CHECK_FALSE(verify_schottky_system(s).passed);
}

TEST_CASE("three reflections in disjoint circles", "[geometry]") {
  CircleSystem s;
  for (double x : {-4.0, 0.0, 4.0}) {
    auto c = GenCircle::circle(x, 1);
    s.add_self_paired(c, reflect_in(c));
    CHECK(classify(reflect_in(c)).kind == TransformClass::Kind::reflection);
  }
  s.basepoint = ProjectivePoint::infinity();
  CHECK(verify_schottky_system(s).passed);
}

TEST_CASE("loxodromic pairing of two disjoint circles", "[geometry]") {
  CircleSystem s;
  // z -> 9z takes the outside of |z| = 1 onto the outside of |z| = 9
  auto f = MoebiusMap(3, 0, 0, 1.0 / 3);
  s.add_pair(GenCircle::circle(0, 1), GenCircle::circle(0, 9), f);
  s.basepoint = ProjectivePoint(Complex(3, 0));
  CHECK(verify_schottky_system(s).passed);
}

TEST_CASE("example circle systems pass the checker", "[geometry]") {
  auto e2 = example_7_2();
  REQUIRE(e2.geometry);
  CHECK(e2.geometry->system.entries.size() == 4);
  CHECK(e2.geometry->report.passed);
  auto e3 = example_7_3();
  REQUIRE(e3.geometry);
  CHECK(e3.geometry->system.entries.size() == 6);
  CHECK(e3.geometry->report.passed);
}

TEST_CASE("composite loxodromic of the 4-circle example", "[geometry]") {
  auto        ex = example_7_2();
  auto const& m  = ex.geometry->maps;
  auto        B  = compose({m.at("eta1"), m.at("eta2"), m.at("eta3"), m.at("eta2")});
  CHECK(classify(B).kind == TransformClass::Kind::loxodromic);
  CHECK(B.approx_equal(m.at("B")));
  CHECK(deviation(compose({m.at("eta2"), B, m.at("eta2")}), m.at("A")) < 1e-9);
  for (auto const& r : ex.geometry->relations) {
    INFO(r.name);
    CHECK(r.deviation < 1e-9);
  }
}
