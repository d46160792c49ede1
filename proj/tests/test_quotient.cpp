#include <catch_amalgamated.hpp>

#include <algorithm>

#include <schottky/constructions.hpp>
#include <schottky/quotient.hpp>

#include "support/random_corpus.hpp"

using namespace schottky;

namespace {
  std::shared_ptr<FiniteGroup const> shared(FiniteGroup g) {
    return std::make_shared<FiniteGroup const>(std::move(g));
  }
}  // namespace

TEST_CASE("validation", "[quotient]") {
  CHECK(validate(example_7_1(3, 4).epimorphism).ok());

  TypeVParams v;
  v.elliptic_orders = {3};
  StructuralGroup s({FactorSpec::type_v(v)});
  auto            D2 = shared(dihedral(2));
  auto            x = D2->element("x").index, y = D2->element("y").index;
  auto            bad = validate(Epimorphism(s, D2, std::vector<std::uint32_t>{y, x}));
  CHECK_FALSE(bad.ok());
  CHECK(bad.surjective);
  CHECK_FALSE(bad.violations.empty());

  StructuralGroup r3(std::vector<FactorSpec>(3, FactorSpec::reflection()));
  auto            D3 = shared(dihedral(3));
  auto            a  = D3->element("x").index;
  auto            ns = validate(Epimorphism(r3, D3, std::vector<std::uint32_t>{a, a, a}));
  CHECK_FALSE(ns.surjective);
  CHECK_FALSE(ns.ok());
  CHECK_THROWS_AS(kernel_rank(Epimorphism(r3, D3, std::vector<std::uint32_t>{a, a, a})),
                  InvalidEpimorphism);
}

TEST_CASE("torsion in the kernel", "[quotient]") {
  auto            D2 = shared(dihedral(2));
  auto            x = D2->element("x").index, y = D2->element("y").index;
  StructuralGroup two(std::vector<FactorSpec>(2, FactorSpec::reflection()));
  CHECK(kernel_torsion_free(Epimorphism(two, D2, std::vector<std::uint32_t>{x, y}))
            .torsion_free);
  auto killed = kernel_torsion_free(Epimorphism(two, D2, std::vector<std::uint32_t>{x, 0}));
  CHECK_FALSE(killed.torsion_free);

  TypeVParams v;
  v.commuting_involutions = 1;
  StructuralGroup s({FactorSpec::type_v(v)});
  auto            t = kernel_torsion_free(Epimorphism(s, D2, std::vector<std::uint32_t>{x, x}));
  REQUIRE_FALSE(t.torsion_free);
  REQUIRE(t.witness);
  // the witness is sigma * sigma_1 (in some order) and does map to 1
  Epimorphism e(s, D2, std::vector<std::uint32_t>{x, x});
  CHECK(e.evaluate(*t.witness) == 0);
  CHECK(t.witness->syllables().size() == 2);
}

TEST_CASE("kernel rank of the worked examples", "[quotient]") {
  CHECK(kernel_rank(example_7_1(3, 4).epimorphism).rank == 10);
  CHECK(kernel_rank(example_7_2().epimorphism).rank == 2);
  CHECK(kernel_rank(example_7_3().epimorphism).rank == 3);
  CHECK(kernel_rank(example_7_5(3).epimorphism).rank == 7);
  for (long long n : {0, 1, 2}) {
    CHECK(kernel_rank(example_7_4(n).epimorphism).rank == 6 * n + 4);
  }
  StructuralGroup one({FactorSpec::reflection()});
  auto k = kernel_rank(Epimorphism(one, shared(cyclic(2)), std::vector<std::uint32_t>{1}));
  CHECK(k.rank == 0);
  CHECK(k.rs_rank == 0);
}

TEST_CASE("Schreier generators lie in the kernel", "[quotient]") {
  auto e = example_7_1(3, 2).epimorphism;
  auto k = kernel_rank(e, true);
  REQUIRE(k.schreier_generators.size() == std::size_t(k.rank));
  for (auto const& w : k.schreier_generators) {
    CHECK(e.evaluate(w) == 0);
  }
}

TEST_CASE("epimorphism search", "[quotient]") {
  StructuralGroup two(std::vector<FactorSpec>(2, FactorSpec::reflection()));
  auto            D2  = shared(dihedral(2));
  auto            all = find_epimorphisms(two, D2);
  CHECK(all.size() == 6);  // ordered pairs of distinct involutions
  SearchOptions up;
  up.up_to_automorphism = true;
  auto reduced          = find_epimorphisms(two, D2, up);
  CHECK(reduced.size() == 1);

  StructuralGroup one({FactorSpec::reflection()});
  CHECK(find_epimorphisms(one, shared(dihedral(3))).empty());

  auto D3   = shared(dihedral(3));
  auto x    = D3->element("x").index, y = D3->element("y").index;
  auto hits = find_epimorphisms(
      StructuralGroup(std::vector<FactorSpec>(3, FactorSpec::reflection())), D3);
  std::vector<std::uint32_t> want{x, x, y};
  CHECK(std::any_of(hits.begin(), hits.end(),
                    [&](Epimorphism const& e) { return e.images() == want; }));
  for (auto const& e : hits) {
    CHECK(validate(e).ok());
  }

  SearchOptions tight;
  tight.max_search_space = 10;
  CHECK_THROWS_AS(
      find_epimorphisms(StructuralGroup(std::vector<FactorSpec>(
                            6, FactorSpec::reflection())),
                        shared(dihedral(8)), tight),
      SearchSpaceTooLarge);
}

TEST_CASE("orientation constraints", "[quotient]") {
  // a glide and a reflection onto D2: the constraint rejects every map
  StructuralGroup gr({FactorSpec::glide_reflection(), FactorSpec::reflection()});
  auto            D2 = shared(dihedral(2));
  SearchOptions   opt;
  opt.orientation = OrientationConstraint::kernel_preserving;
  for (auto const& e : find_epimorphisms(gr, D2, opt)) {
    CHECK(kernel_orientation_check(e).consistent);
  }
  auto ex = example_7_1(3, 2).epimorphism;
  auto o  = kernel_orientation_check(ex);
  REQUIRE(o.consistent);
  CHECK(o.parity[ex.target().element("x").index] == 1);
  CHECK(o.parity[0] == 0);
}

TEST_CASE("Reidemeister-Schreier agrees with the Euler characteristic",
          "[quotient][random]") {
  testing::Rng rng(20240611);
  auto         groups = testing::small_groups();
  int          seen   = 0;
  for (int i = 0; i < 150; ++i) {
    auto e = testing::random_epimorphism(rng, groups, testing::Filter::torsion_free);
    if (!e) {
      continue;
    }
    ++seen;
    auto k = kernel_rank(*e);  // throws OracleMismatch on disagreement
    CHECK(k.rs_rank == k.euler_rank);
    CHECK(k.rank >= 0);
  }
  CHECK(seen >= 100);
}
