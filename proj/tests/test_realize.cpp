#include <catch_amalgamated.hpp>

#include <schottky/realize.hpp>

using namespace schottky;

namespace {
  void check_realization(StructuralGroup const& s, LayoutHints const& h = {}) {
    auto r = realize_geometrically(s, h);
    INFO(r.report.condition << ": " << r.report.detail);
    CHECK(r.report.passed);
    auto const& p = s.presentation();
    REQUIRE(r.generators.size() == p.generators.size());
    for (std::size_t i = 0; i < p.generators.size(); ++i) {
      INFO(p.generators[i].name);
      CHECK(classify(r.generators[i]) == expected_class(p.generators[i]));
    }
    for (auto const& rel : p.relators) {
      CHECK(evaluate_word(r.generators, rel).approx_equal(MoebiusMap::identity(), 1e-9));
    }
  }
}  // namespace

TEST_CASE("three reflections", "[realize]") {
  check_realization(StructuralGroup(std::vector<FactorSpec>(3, FactorSpec::reflection())));
}

TEST_CASE("one factor of every elementary kind", "[realize]") {
  check_realization(StructuralGroup({FactorSpec::reflection(),
                                     FactorSpec::imaginary_reflection(),
                                     FactorSpec::loxodromic(),
                                     FactorSpec::glide_reflection()}));
}

TEST_CASE("a rich type V factor", "[realize]") {
  TypeVParams v;
  v.elliptic_orders       = {2, 3, 5};
  v.commuting_involutions = 2;
  v.imaginary_involutions = 1;
  v.corners               = {2, 3};
  v.schottky_rank         = 1;
  check_realization(StructuralGroup({FactorSpec::type_v(v)}));
  check_realization(StructuralGroup({FactorSpec::reflection(), FactorSpec::type_v(v),
                                     FactorSpec::loxodromic()}));
}

TEST_CASE("explicit positions", "[realize]") {
  StructuralGroup s({FactorSpec::reflection(), FactorSpec::imaginary_reflection(),
                     FactorSpec::loxodromic(), FactorSpec::glide_reflection()});
  LayoutHints     ok;
  ok.positions = {0, 6, 13, 21};
  check_realization(s, ok);

  LayoutHints clash;
  clash.positions = {0, 0.5, 13, 21};
  CHECK_THROWS_AS(realize_geometrically(s, clash), LayoutFailure);

  LayoutHints wrong_count;
  wrong_count.positions = {0, 10};
  CHECK_THROWS(realize_geometrically(s, wrong_count));
}

TEST_CASE("size limit", "[realize]") {
  StructuralGroup big(std::vector<FactorSpec>(33, FactorSpec::reflection()));
  CHECK_THROWS_AS(realize_geometrically(big), PreconditionViolation);
}
