#include <catch_amalgamated.hpp>

#include <schottky/quotient.hpp>
#include <schottky/structure.hpp>

using namespace schottky;

namespace {
  std::vector<FactorSpec> reflections(int n) {
    return std::vector<FactorSpec>(std::size_t(n), FactorSpec::reflection());
  }
  TypeVParams real_schottky(int r) {
    TypeVParams v;
    v.schottky_rank = r;
    return v;
  }
}  // namespace

TEST_CASE("presentation of each factor kind", "[structure]") {
  TypeVParams v;
  v.elliptic_orders       = {3};
  v.commuting_involutions = 2;
  v.imaginary_involutions = 1;
  v.corners               = {2};
  v.schottky_rank         = 1;
  StructuralGroup s({FactorSpec::reflection(), FactorSpec::imaginary_reflection(),
                     FactorSpec::loxodromic(), FactorSpec::glide_reflection(),
                     FactorSpec::type_v(v)});
  auto names = s.presentation().names();
  std::vector<std::string> want{"E1", "J2", "L3", "G4", "S5", "S5.t1", "S5.s1",
                                "S5.s2", "S5.c1a", "S5.c1b", "S5.f1"};
  CHECK(names == want);
  CHECK(s.alpha() == 1);
  CHECK(s.beta() == 1);
  CHECK(s.gamma() == 1);
  CHECK(s.delta() == 1);
  CHECK(s.epsilon() == 1);
  CHECK(s.has_corners());
}

TEST_CASE("invalid structures are rejected", "[structure]") {
  TypeVParams v;
  v.elliptic_orders = {1};
  CHECK_THROWS_AS(StructuralGroup({FactorSpec::type_v(v)}), InvalidStructure);
  TypeVParams w;
  w.commuting_involutions = 1;
  w.imaginary_involutions = 2;
  CHECK_THROWS_AS(StructuralGroup({FactorSpec::type_v(w)}), InvalidStructure);
  CHECK_THROWS_AS(StructuralGroup({FactorSpec::reflection("E"),
                                   FactorSpec::reflection("E")}),
                  InvalidStructure);
}

TEST_CASE("rank of the orientation-preserving half", "[structure]") {
  for (int r = 1; r <= 6; ++r) {
    CHECK(extended_schottky_rank(StructuralGroup(reflections(r + 1))) == r);
  }
  CHECK(extended_schottky_rank(StructuralGroup(
            {FactorSpec::reflection(), FactorSpec::glide_reflection()}))
        == 2);
  CHECK(extended_schottky_rank(StructuralGroup({FactorSpec::type_v(real_schottky(1)),
                                                FactorSpec::type_v(real_schottky(2))}))
        == 4);
  CHECK_THROWS_AS(extended_schottky_rank(StructuralGroup({FactorSpec::loxodromic()})),
                  InvalidStructure);
}

TEST_CASE("rank formula agrees with the sign quotient", "[structure]") {
  // the kernel of the orientation character onto Z2 is the preserving half
  auto Z2 = std::make_shared<FiniteGroup const>(cyclic(2));
  std::vector<std::vector<FactorSpec>> cases = {
      reflections(3),
      {FactorSpec::reflection(), FactorSpec::glide_reflection()},
      {FactorSpec::imaginary_reflection(), FactorSpec::loxodromic(),
       FactorSpec::loxodromic()},
      {FactorSpec::type_v(real_schottky(1)), FactorSpec::type_v(real_schottky(2))},
      {FactorSpec::glide_reflection(), FactorSpec::type_v(real_schottky(0)),
       FactorSpec::imaginary_reflection()},
  };
  for (auto const& fs : cases) {
    StructuralGroup            s(fs);
    std::vector<std::uint32_t> img;
    for (auto const& g : s.presentation().generators) {
      img.push_back(g.orientation == Orientation::reversing ? 1 : 0);
    }
    Epimorphism e(s, Z2, img);
    auto        k = kernel_rank(e);
    CHECK(k.rs_rank == extended_schottky_rank(s));
    CHECK(k.euler_rank == extended_schottky_rank(s));
  }
}

TEST_CASE("genus predicted for a dihedral quotient", "[structure]") {
  for (long long q : {2, 3, 5}) {
    for (long long r : {1, 2, 4}) {
      auto g = dihedral_quotient_genus(StructuralGroup(reflections(int(r + 1))), q);
      CHECK(g.integral);
      CHECK(g.value == Rational(q * (r - 1) + 1));
    }
  }
  for (long long n : {1, 2}) {
    auto g = dihedral_quotient_genus(StructuralGroup(reflections(int(2 * n + 3))), 3);
    CHECK(g.value == Rational(6 * n + 4));
  }
  TypeVParams v;
  v.commuting_involutions = 2;
  auto g = dihedral_quotient_genus(StructuralGroup({FactorSpec::type_v(v)}), 2);
  CHECK(g.value == Rational(1));

  // cross-check with the rank of an actual kernel
  StructuralGroup s({FactorSpec::type_v(v)});
  auto            D2 = std::make_shared<FiniteGroup const>(dihedral(2));
  auto            x = D2->element("x").index, y = D2->element("y").index;
  Epimorphism     e(s, D2, std::vector<std::uint32_t>{x, y, D2->mul(x, y)});
  CHECK(kernel_rank(e).rank == 1);
}

TEST_CASE("quotient orbifold signature", "[structure]") {
  auto sig = orbifold_signature(StructuralGroup(reflections(5)));
  CHECK(sig.genus == 4);
  CHECK(sig.cone_orders.empty());

  TypeVParams v;
  v.elliptic_orders       = {3};
  v.commuting_involutions = 1;
  sig = orbifold_signature(StructuralGroup({FactorSpec::type_v(v)}));
  CHECK(sig.genus == 0);
  CHECK(sig.cone_orders == std::vector<int>{3, 3, 2, 2});

  TypeVParams t2;
  t2.elliptic_orders = {2};
  sig = orbifold_signature(
      StructuralGroup({FactorSpec::type_v(t2), FactorSpec::type_v(t2)}));
  CHECK(sig.genus == 1);
  CHECK(sig.cone_orders == std::vector<int>{2, 2, 2, 2});
}

TEST_CASE("dihedral criterion", "[structure]") {
  CHECK(dihedral_criterion(StructuralGroup(reflections(2))));
  CHECK_FALSE(dihedral_criterion(StructuralGroup(reflections(1))));
  TypeVParams v;
  v.commuting_involutions = 1;
  CHECK(dihedral_criterion(StructuralGroup({FactorSpec::type_v(v)})));
  CHECK_FALSE(dihedral_criterion(StructuralGroup({FactorSpec::glide_reflection()})));
}

TEST_CASE("criterion matches a brute-force search", "[structure]") {
  // existence of a cyclic-rotation epimorphism onto some small D_n, for
  // structures without loxodromic or free parts
  TypeVParams bare, inv;
  inv.commuting_involutions = 1;
  std::vector<std::vector<FactorSpec>> cases = {
      reflections(1),
      reflections(2),
      {FactorSpec::glide_reflection()},
      {FactorSpec::glide_reflection(), FactorSpec::reflection()},
      {FactorSpec::imaginary_reflection(), FactorSpec::glide_reflection()},
      {FactorSpec::type_v(bare)},
      {FactorSpec::type_v(inv)},
      {FactorSpec::type_v(bare), FactorSpec::type_v(bare)},
      {FactorSpec::reflection(), FactorSpec::type_v(bare)},
  };
  auto found = [](StructuralGroup const& s) {
    for (std::size_t n = 2; n <= 6; ++n) {
      SearchOptions opt;
      opt.orientation = OrientationConstraint::cyclic_rotation;
      opt.max_results = 1;
      if (!find_epimorphisms(s, std::make_shared<FiniteGroup const>(dihedral(n)),
                             opt)
               .empty()) {
        return true;
      }
    }
    return false;
  };
  for (auto const& fs : cases) {
    StructuralGroup s(fs);
    CHECK(found(s) == dihedral_criterion(s));
  }

  // With a loxodromic factor the literal criterion is stricter than the
  // search: E -> x, L -> (yx) is a valid quotient onto D_n.
  StructuralGroup el({FactorSpec::reflection(), FactorSpec::loxodromic()});
  CHECK(found(el));
  CHECK_FALSE(dihedral_criterion(el));
}
