#include <catch_amalgamated.hpp>

#include <random>

#include <schottky/geometry.hpp>
#include <schottky/moebius.hpp>

using namespace schottky;
using K = TransformClass::Kind;

namespace {
  MoebiusMap random_map(std::mt19937_64& rng, bool reversing) {
    std::normal_distribution<double> N;
    for (;;) {
      Complex a(N(rng), N(rng)), b(N(rng), N(rng)), c(N(rng), N(rng)),
          d(N(rng), N(rng));
      if (std::abs(a * d - b * c) > 0.1) {
        return MoebiusMap(a, b, c, d, reversing ? Orientation::reversing
                                                : Orientation::preserving);
      }
    }
  }
}  // namespace

TEST_CASE("composition", "[moebius]") {
  auto conj = MoebiusMap::conjugation();
  CHECK(compose(conj, conj).approx_equal(MoebiusMap::identity()));

  auto minus_conj = MoebiusMap(-1, 0, 0, 1, Orientation::reversing);
  auto half_turn  = compose(minus_conj, conj);
  CHECK_FALSE(half_turn.is_reversing());
  CHECK(std::abs(half_turn(Complex(2, 1)) - Complex(-2, -1)) < 1e-12);
  CHECK(classify(half_turn) == TransformClass{K::elliptic, 2});
}

TEST_CASE("composition is associative and inverse works", "[moebius]") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    auto f = random_map(rng, i % 2);
    auto g = random_map(rng, i % 3 == 0);
    auto h = random_map(rng, i % 5 == 0);
    CHECK(deviation((f * g) * h, f * (g * h)) < 1e-12);
    CHECK((f * f.inverse()).approx_equal(MoebiusMap::identity(), 1e-10));
    Complex z(0.3, -0.7);
    CHECK(std::abs((f * g)(z) - f(g(z))) < 1e-8 * (1 + std::abs(f(g(z)))));
  }
}

TEST_CASE("classification of the standard maps", "[moebius]") {
  CHECK(classify(MoebiusMap::conjugation()).kind == K::reflection);
  CHECK(classify(MoebiusMap(0, -1, 1, 0, Orientation::reversing)).kind
        == K::imaginary_reflection);
  CHECK(classify(MoebiusMap(4, 0, 0, 1)).kind == K::loxodromic);
  CHECK(classify(MoebiusMap::translation(1)).kind == K::parabolic);
  CHECK(classify(MoebiusMap::identity()).kind == K::identity);
  // rotation by 2 pi / 5
  double t = std::numbers::pi / 5;
  CHECK(classify(MoebiusMap(std::polar(1.0, t), 0, 0, std::polar(1.0, -t)))
        == TransformClass{K::elliptic, 5});
  // conj(z) + 3 squares to a translation: not a glide in the loxodromic sense
  CHECK(classify(MoebiusMap::translation(3) * MoebiusMap::conjugation()).kind
        == K::pseudo_parabolic);
  CHECK(classify(MoebiusMap(Complex(2, 0), 0, 0, 0.5, Orientation::reversing))
            .kind
        == K::glide_reflection);
}

TEST_CASE("z -> -conj(z) + 1 is the reflection in Re z = 1/2", "[moebius]") {
  MoebiusMap f(-1, 1, 0, 1, Orientation::reversing);
  CHECK(classify(f).kind == K::reflection);
  auto fp = fixed_points(f);
  REQUIRE(fp.circle);
  CHECK(fp.circle->is_line());
  for (double y : {-3.0, 0.0, 2.5}) {
    CHECK(std::abs(f(Complex(0.5, y)) - Complex(0.5, y)) < 1e-12);
  }
  CHECK(fp.circle->approx_equal(GenCircle::line(Complex(1, 0), 0.5)));
}

TEST_CASE("fixed points", "[moebius]") {
  auto real = fixed_points(MoebiusMap::conjugation());
  REQUIRE(real.circle);
  CHECK(real.circle->approx_equal(GenCircle::real_axis()));

  auto dil = fixed_points(MoebiusMap(4, 0, 0, 1));
  REQUIRE(dil.points.size() == 2);
  int zero = 0, inf = 0;
  for (auto const& p : dil.points) {
    zero += !p.is_infinity() && std::abs(p.affine()) < 1e-12;
    inf += p.is_infinity();
  }
  CHECK(zero == 1);
  CHECK(inf == 1);

  auto anti = fixed_points(MoebiusMap(0, -1, 1, 0, Orientation::reversing));
  CHECK(anti.points.empty());
  CHECK_FALSE(anti.circle);
}

TEST_CASE("classification is invariant under inversion and conjugation",
          "[moebius]") {
  std::mt19937_64 rng(11);
  std::vector<MoebiusMap> samples = {
      MoebiusMap(4, 0, 0, 1),
      MoebiusMap::translation(1),
      MoebiusMap(std::polar(1.0, std::numbers::pi / 3), 0, 0,
                 std::polar(1.0, -std::numbers::pi / 3)),
      MoebiusMap::conjugation(),
      MoebiusMap(0, -1, 1, 0, Orientation::reversing),
      MoebiusMap::translation(3) * MoebiusMap::conjugation(),
      MoebiusMap(Complex(2, 0), 0, 0, 0.5, Orientation::reversing),
  };
  for (auto const& f : samples) {
    auto c = classify(f);
    CHECK(classify(f.inverse()) == c);
    for (int i = 0; i < 20; ++i) {
      auto g = random_map(rng, i % 2);
      // keep conjugators tame so the tolerance band is not hit
      auto gm = g.matrix();
      double sz = 0;
      for (auto x : gm) {
        sz = std::max(sz, std::abs(x));
      }
      if (sz > 5) {
        continue;
      }
      CHECK(classify(conjugate_by(g, f)) == c);
    }
  }
}

TEST_CASE("random circle reflections", "[moebius]") {
  std::mt19937_64                        rng(3);
  std::uniform_real_distribution<double> U(-5, 5), R(0.1, 4);
  for (int i = 0; i < 100; ++i) {
    auto c = GenCircle::circle(Complex(U(rng), U(rng)), R(rng));
    auto f = reflect_in(c);
    CHECK(classify(f).kind == K::reflection);
    auto fp = fixed_points(f);
    REQUIRE(fp.circle);
    CHECK(fp.circle->approx_equal(c, 1e-9));
    // the imaginary counterpart has no fixed points
    auto j = imaginary_reflection(c.center(), c.radius());
    CHECK(classify(j).kind == K::imaginary_reflection);
  }
}

TEST_CASE("ambiguous input is refused rather than guessed", "[moebius]") {
  // trace squared within the band around 4
  double     e = 1e-3;
  MoebiusMap f(1 + e, 1, 0, 1 / (1 + e));
  CHECK_THROWS_AS(classify(f), NumericallyAmbiguous);
}
