#ifndef SCHOTTKY_CONSTRUCTIONS_HPP_
#define SCHOTTKY_CONSTRUCTIONS_HPP_

#include <cmath>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "finite_groups.hpp"
#include "geometry.hpp"
#include "quotient.hpp"
#include "realize.hpp"
#include "structure.hpp"

// Worked examples: a structure, a quotient map, the designated symmetries,
// and for two of them an explicit circle picture.

namespace schottky {

  struct RelationCheck {
    std::string name;
    double      deviation = 0;
  };

  struct ExampleGeometry {
    std::map<std::string, MoebiusMap> maps;  // named transformations
    std::vector<RelationCheck>        relations;
    CircleSystem                      system;  // for the kernel
    VerificationReport                report;
    // Generators of the structural group realized by the named maps.
    std::vector<MoebiusMap>           structure_generators;
  };

  struct ExampleCase {
    std::string                  id;
    std::map<std::string, long long> params;
    Epimorphism                  epimorphism;
    std::vector<std::uint32_t>   designated;  // the symmetries tau_j
    std::optional<ExampleGeometry> geometry;
  };

  namespace detail {
    inline void require(bool ok, std::string const& msg) {
      if (!ok) {
        throw PreconditionViolation(msg);
      }
    }

    inline std::vector<FactorSpec> reflections(int n) {
      std::vector<FactorSpec> f;
      for (int i = 1; i <= n; ++i) {
        f.push_back(FactorSpec::reflection("E" + std::to_string(i)));
      }
      return f;
    }
  }  // namespace detail

  // r+1 reflections onto D_q; E1 -> x, the rest -> y.
  inline ExampleCase example_7_1(long long q, long long r) {
    detail::require(q >= 2 && r >= 1, "example 7.1 needs q >= 2, r >= 1");
    detail::require((r - 1) * q + 1 >= 2, "example 7.1 needs genus >= 2");
    StructuralGroup s(detail::reflections(int(r + 1)));
    auto            G = std::make_shared<FiniteGroup const>(dihedral(q));
    auto            x = G->element("x").index, y = G->element("y").index;
    std::vector<std::uint32_t> img(r + 1, y);
    img[0] = x;
    return {"7.1", {{"q", q}, {"r", r}}, Epimorphism(s, G, img), {x, y}, {}};
  }

  // 2n+3 reflections onto D_3 = <a, b>; all but the last -> a.
  inline ExampleCase example_7_4(long long n) {
    detail::require(n >= 0, "example 7.4 needs n >= 0");
    StructuralGroup s(detail::reflections(int(2 * n + 3)));
    auto            G = std::make_shared<FiniteGroup const>(dihedral(3));
    auto            a = G->element("x").index, b = G->element("y").index;
    std::vector<std::uint32_t> img(2 * n + 3, a);
    img.back() = b;
    return {"7.4", {{"n", n}}, Epimorphism(s, G, img),
            {a, b, G->conj(b, a)}, {}};
  }

  // Three reflections onto Z2 x D_r, to c, a, b.
  inline ExampleCase example_7_5(long long r) {
    detail::require(r >= 2, "example 7.5 needs r >= 2");
    StructuralGroup s(detail::reflections(3));
    auto G = std::make_shared<FiniteGroup const>(z2_times_dihedral(r));
    auto c = G->element("c").index, a = G->element("a").index,
         b = G->element("b").index;
    return {"7.5", {{"r", r}}, Epimorphism(s, G, {c, a, b}), {c, a, b}, {}};
  }

  namespace detail {
    inline RelationCheck relation(std::string name,
                                  MoebiusMap const& lhs,
                                  MoebiusMap const& rhs) {
      return {std::move(name), deviation(lhs, rhs)};
    }
  }  // namespace detail

  // Reflections eta1 = conj, eta2 = -conj, eta3 in Sigma, eta4 in the circle
  // about 0 orthogonal to Sigma.  Structure <eta4> x (<eta1, eta2> * <eta3>).
  inline ExampleCase example_7_2(Complex center = Complex(2, 2),
                                 double  radius = 0.5,
                                 Tolerance tol  = {}) {
    double R2 = std::norm(center) - radius * radius;
    detail::require(R2 > 0 && std::abs(center.real()) > radius
                        && std::abs(center.imag()) > radius,
                    "Sigma must avoid both axes");
    auto sigma = GenCircle::circle(center, radius);
    auto e1    = MoebiusMap::conjugation();
    auto e2    = reflect_in(GenCircle::line(Complex(1, 0), 0));
    auto e3    = reflect_in(sigma);
    auto e4    = reflect_in(GenCircle::circle(0, std::sqrt(R2)));
    auto A     = e1 * e3;
    auto B     = compose({e1, e2, e3, e2});

    ExampleGeometry geo;
    geo.maps = {{"eta1", e1}, {"eta2", e2}, {"eta3", e3}, {"eta4", e4},
                {"A", A},     {"B", B}};
    auto Ai  = A.inverse();
    auto Bi  = B.inverse();
    using detail::relation;
    geo.relations = {
        relation("eta1 A eta1 = A^-1", compose({e1, A, e1}), Ai),
        relation("eta3 A eta3 = A^-1", compose({e3, A, e3}), Ai),
        relation("eta2 A eta2 = B", compose({e2, A, e2}), B),
        relation("eta4 B eta4 = B", compose({e4, B, e4}), B),
        relation("eta4 A eta4 = A", compose({e4, A, e4}), A),
        relation("eta2 B eta2 = A", compose({e2, B, e2}), A),
        relation("eta1 B eta1 = B^-1", compose({e1, B, e1}), Bi),
        relation("eta3 B eta3 = A^-1 B^-1 A", compose({e3, B, e3}),
                 compose({Ai, Bi, A})),
    };
    auto c1  = sigma;
    auto c1p = map_circle(e1, sigma, tol);
    auto c2  = map_circle(e2, sigma, tol);
    auto c2p = map_circle(e2 * e1, sigma, tol);
    geo.system.add_pair(c1, c1p, A, -1, "C1");
    geo.system.add_pair(c2, c2p, B, -1, "C2");
    geo.system.basepoint = ProjectivePoint::infinity();
    geo.report           = verify_schottky_system(geo.system, tol);

    TypeVParams v;
    v.commuting_involutions = 1;
    v.corners               = {2};
    StructuralGroup s({FactorSpec::type_v(v, "S")});
    // presentation order: S, S.s1, S.c1a, S.c1b
    geo.structure_generators = {e4, e3, e1, e2};

    auto G = std::make_shared<FiniteGroup const>(elementary_abelian_2(3));
    auto u = G->element("e1").index, w = G->element("e2").index,
         x = G->element("e3").index;
    // eta4 -> w, eta3 -> u, eta1 -> u, eta2 -> x
    Epimorphism e(s, G, std::vector<std::uint32_t>{w, u, u, x});
    return {"7.2", {}, e, {u, x, w}, std::move(geo)};
  }

  // Reflections eta1 = conj, eta2 = -conj and eta3 in a circle Sigma off
  // both axes.  Structure (<eta1> x <eta2>) * <eta3>.
  inline ExampleCase example_7_3(Complex center = Complex(2, 3),
                                 double  radius = 0.5,
                                 Tolerance tol  = {}) {
    detail::require(std::abs(center.real()) > radius
                        && std::abs(center.imag()) > radius,
                    "Sigma must avoid both axes");
    auto sigma = GenCircle::circle(center, radius);
    auto e1    = MoebiusMap::conjugation();
    auto e2    = reflect_in(GenCircle::line(Complex(1, 0), 0));
    auto e3    = reflect_in(sigma);
    auto A1    = power(e3 * e1, 2);
    auto A2    = power(e3 * e2, 2);
    auto A3    = compose({e3, e2, e1, e3, e1, e2});

    ExampleGeometry geo;
    geo.maps = {{"eta1", e1}, {"eta2", e2}, {"eta3", e3},
                {"A1", A1},   {"A2", A2},   {"A3", A3}};
    using detail::relation;
    auto id       = MoebiusMap::identity();
    geo.relations = {
        relation("eta1 eta2 = eta2 eta1", e1 * e2, e2 * e1),
        relation("eta3^2 = 1", e3 * e3, id),
    };
    auto c1 = map_circle(e1, sigma, tol);
    auto c2 = map_circle(e2, sigma, tol);
    auto c3 = map_circle(e2, c1, tol);
    geo.system.add_pair(c1, map_circle(e3, c1, tol), A1, -1, "C1");
    geo.system.add_pair(c2, map_circle(e3, c2, tol), A2, -1, "C2");
    geo.system.add_pair(c3, map_circle(e3, c3, tol), A3, -1, "C3");
    geo.system.basepoint = ProjectivePoint::infinity();
    geo.report           = verify_schottky_system(geo.system, tol);

    TypeVParams v;
    v.commuting_involutions = 1;
    StructuralGroup s({FactorSpec::type_v(v, "S"), FactorSpec::reflection("E")});
    // presentation order: S, S.s1, E
    geo.structure_generators = {e1, e2, e3};

    auto G = std::make_shared<FiniteGroup const>(elementary_abelian_2(3));
    auto t1 = G->element("e1").index, t2 = G->element("e2").index,
         t3 = G->element("e3").index;
    Epimorphism e(s, G, std::vector<std::uint32_t>{t1, t2, t3});
    return {"7.3", {}, e, {t1, t2, t3}, std::move(geo)};
  }

  // Dispatch by id; missing parameters take the smallest admissible value.
  inline ExampleCase make_example(std::string const&                      id,
                                  std::map<std::string, long long> const& p,
                                  Tolerance tol = {}) {
    auto get = [&](char const* k, long long d) {
      auto it = p.find(k);
      return it == p.end() ? d : it->second;
    };
    if (id == "7.1") {
      return example_7_1(get("q", 3), get("r", 4));
    }
    if (id == "7.2") {
      return example_7_2(Complex(2, 2), 0.5, tol);
    }
    if (id == "7.3") {
      return example_7_3(Complex(2, 3), 0.5, tol);
    }
    if (id == "7.4") {
      return example_7_4(get("n", 1));
    }
    if (id == "7.5") {
      return example_7_5(get("r", 3));
    }
    throw std::out_of_range("unknown example " + id);
  }

}  // namespace schottky

#endif  // SCHOTTKY_CONSTRUCTIONS_HPP_
