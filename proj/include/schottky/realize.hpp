#ifndef SCHOTTKY_REALIZE_HPP_
#define SCHOTTKY_REALIZE_HPP_

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "errors.hpp"
#include "geometry.hpp"
#include "moebius.hpp"
#include "structure.hpp"

namespace schottky {

  struct LayoutHints {
    // Centers of the factors along the real axis.  Empty means automatic
    // placement; otherwise one entry per factor.
    std::vector<double> positions;
    double              gap = 1.0;  // minimum clearance between factors
  };

  struct Realization {
    std::vector<MoebiusMap> generators;  // one per presentation generator
    CircleSystem            system;
    VerificationReport      report;
  };

  // Map represented by a word in the given generator maps.
  inline MoebiusMap evaluate_word(std::vector<MoebiusMap> const& gens,
                                  Word const&                    w) {
    MoebiusMap r = MoebiusMap::identity();
    for (auto const& s : w.syllables()) {
      MoebiusMap g = s.exp < 0 ? gens[s.gen].inverse() : gens[s.gen];
      for (int i = 0; i < std::abs(s.exp); ++i) {
        r = r * g;
      }
    }
    return r;
  }

  inline TransformClass expected_class(Generator const& g) {
    using K = TransformClass::Kind;
    switch (g.role) {
      case GenRole::reflection:
      case GenRole::sigma:
      case GenRole::involution:
      case GenRole::corner_a:
      case GenRole::corner_b:
        return {K::reflection, 0};
      case GenRole::imaginary_reflection:
      case GenRole::imaginary_involution:
        return {K::imaginary_reflection, 0};
      case GenRole::loxodromic:
      case GenRole::free:
        return {K::loxodromic, 0};
      case GenRole::glide_reflection:
        return {K::glide_reflection, 0};
      case GenRole::elliptic:
        return {K::elliptic, g.order};
    }
    return {};
  }

  namespace detail {

    struct LocalFactor {
      CircleSystem            system;
      std::vector<MoebiusMap> maps;  // in presentation order of the factor
      double                  extent = 0;  // all circles within |z| <= extent
    };

    inline double circle_extent(CircleSystem const& s) {
      double e = 0;
      for (auto const& c : s.entries) {
        if (c.circle.is_line()) {
          throw LayoutFailure("unbounded circle in a local layout");
        }
        e = std::max(e, std::abs(c.circle.center()) + c.circle.radius());
      }
      return e;
    }

    // z -> x - 1/conj(z - x), the antipodal map of circle(x, 1).
    inline MoebiusMap antipodal_at(double x) {
      return imaginary_reflection(Complex(x, 0), 1.0);
    }

    // Preserving pairing of circle(-d, 1) onto circle(d, 1).
    inline MoebiusMap hyperbolic_pairing(double x, double d) {
      auto mid = reflect_in(GenCircle::line(Complex(1, 0), x));
      return reflect_in(GenCircle::circle(Complex(x + d, 0), 1)) * mid;
    }

    inline LocalFactor local_simple(FactorKind k, int block) {
      LocalFactor lf;
      auto        unit = GenCircle::circle(0, 1);
      switch (k) {
        case FactorKind::reflection: {
          auto m = reflect_in(unit);
          lf.system.add_self_paired(unit, m, block);
          lf.maps.push_back(m);
          break;
        }
        case FactorKind::imaginary_reflection: {
          auto m = antipodal_at(0);
          lf.system.add_self_paired(unit, m, block);
          lf.maps.push_back(m);
          break;
        }
        case FactorKind::loxodromic: {
          auto m = hyperbolic_pairing(0, 2);
          lf.system.add_pair(GenCircle::circle(-2, 1), GenCircle::circle(2, 1),
                             m, block);
          lf.maps.push_back(m);
          break;
        }
        case FactorKind::glide_reflection: {
          auto m = reflect_in(GenCircle::circle(2, 1))
                   * MoebiusMap::translation(4);
          lf.system.add_pair(GenCircle::circle(-2, 1), GenCircle::circle(2, 1),
                             m, block);
          lf.maps.push_back(m);
          break;
        }
        case FactorKind::type_v:
          break;
      }
      lf.extent = circle_extent(lf.system);
      return lf;
    }

    // Rotation by 2 pi / o about x + i in the upper half-plane.
    inline MoebiusMap rotation_at(double x, int o, bool positive) {
      double     h = std::numbers::pi / o * (positive ? 1 : -1);
      MoebiusMap r(std::cos(h), std::sin(h), -std::sin(h), std::cos(h));
      return conjugate_by(MoebiusMap::translation(x), r);
    }

    // TypeV: slots along the real axis of the upper half-plane model, with
    // the real axis as the mirror, then folded into a bounded picture.
    inline LocalFactor local_type_v(TypeVParams const& v, int block,
                                    Tolerance tol) {
      LocalFactor lf;
      auto&       sys = lf.system;
      std::vector<MoebiusMap> elliptics, involutions, corners, frees;

      // First pass: half widths of the slots.
      std::vector<double> widths;
      for (int o : v.elliptic_orders) {
        double u = o == 2 ? 0 : 1 / std::tan(std::numbers::pi / o);
        widths.push_back(o == 2 ? 1 : u + std::sqrt(1 + u * u));
      }
      for (int k = 0; k < v.commuting_involutions; ++k) {
        widths.push_back(1);
      }
      for (int k : v.corners) {
        double u = 1 / std::tan(std::numbers::pi / (2 * k));
        widths.push_back(u + std::sqrt(1 + u * u));
      }
      for (int k = 0; k < v.schottky_rank; ++k) {
        widths.push_back(2.5);
      }
      double total = 0;
      for (double w : widths) {
        total += 2 * w + 1;
      }
      std::vector<double> xs;
      double              cur = -total / 2;
      double              tall = 1;
      for (double w : widths) {
        xs.push_back(cur + 0.5 + w);
        cur += 2 * w + 1;
        tall = std::max(tall, w);
      }

      std::size_t slot = 0;
      for (int o : v.elliptic_orders) {
        double x = xs[slot++];
        if (o == 2) {
          // half-turn about x + i, preserving circle(x, 1)
          MoebiusMap t(x, -1 - x * x, 1, -x);
          sys.add_self_paired(GenCircle::circle(x, 1), t, block);
          elliptics.push_back(t);
          continue;
        }
        double u  = 1 / std::tan(std::numbers::pi / o);
        double r  = std::sqrt(1 + u * u);
        auto   c1 = GenCircle::circle(x - u, r);
        auto   c2 = GenCircle::circle(x + u, r);
        auto   t  = rotation_at(x, o, true);
        if (!map_circle(t, c1, tol).approx_equal(c2, 1e-6)) {
          t = rotation_at(x, o, false);
        }
        sys.add_pair(c1, c2, t, block);
        elliptics.push_back(t);
      }
      int real = v.commuting_involutions - v.imaginary_involutions;
      for (int k = 0; k < v.commuting_involutions; ++k) {
        double x = xs[slot++];
        auto   c = GenCircle::circle(x, 1);
        auto   m = k < real ? reflect_in(c) : antipodal_at(x);
        sys.add_self_paired(c, m, block);
        involutions.push_back(m);
      }
      for (int k : v.corners) {
        double x = xs[slot++];
        double u = 1 / std::tan(std::numbers::pi / (2 * k));
        double r = std::sqrt(1 + u * u);
        auto   a = GenCircle::circle(x - u, r);
        auto   b = GenCircle::circle(x + u, r);
        sys.add_mirror(a, block);
        sys.add_mirror(b, block);
        corners.push_back(reflect_in(a));
        corners.push_back(reflect_in(b));
      }
      for (int k = 0; k < v.schottky_rank; ++k) {
        double x = xs[slot++];
        auto   f = hyperbolic_pairing(x, 1.5);
        sys.add_pair(GenCircle::circle(x - 1.5, 1),
                     GenCircle::circle(x + 1.5, 1), f, block);
        frees.push_back(f);
      }
      std::size_t sigma_entry = sys.entries.size();
      sys.add_mirror(GenCircle::real_axis(), block);

      // Fold: the real axis goes to the unit circle and i K to infinity.
      double     K = std::max(tall, total / 2) + 1;
      MoebiusMap h(Complex(1, 0), Complex(0, K), Complex(1, 0), Complex(0, -K));
      sys.transform(h, tol);
      auto fold = [&](MoebiusMap const& m) { return conjugate_by(h, m); };

      lf.maps.push_back(sys.entries[sigma_entry].map);
      for (auto const& m : elliptics) {
        lf.maps.push_back(fold(m));
      }
      for (auto const& m : involutions) {
        lf.maps.push_back(fold(m));
      }
      for (auto const& m : corners) {
        lf.maps.push_back(fold(m));
      }
      for (auto const& m : frees) {
        lf.maps.push_back(fold(m));
      }
      lf.extent = circle_extent(sys);
      return lf;
    }

  }  // namespace detail

  // Builds concrete transformations for every generator, lays the factors
  // out along the real axis, and verifies the combined circle system.
  inline Realization realize_geometrically(StructuralGroup const& s,
                                           LayoutHints const&     hints = {},
                                           Tolerance              tol = {}) {
    auto const& p = s.presentation();
    if (p.generators.empty()) {
      throw PreconditionViolation("nothing to realize");
    }
    if (p.generators.size() > 32) {
      throw PreconditionViolation("realization is limited to 32 generators");
    }
    if (!hints.positions.empty()
        && hints.positions.size() != s.factors().size()) {
      throw LayoutFailure("need one position hint per factor");
    }

    std::vector<detail::LocalFactor> locals;
    for (std::size_t fi = 0; fi < s.factors().size(); ++fi) {
      auto const& f = s.factors()[fi];
      locals.push_back(f.kind == FactorKind::type_v
                           ? detail::local_type_v(f.v, int(fi), tol)
                           : detail::local_simple(f.kind, int(fi)));
    }

    std::vector<double> xs = hints.positions;
    if (xs.empty()) {
      double cur = 0;
      for (std::size_t i = 0; i < locals.size(); ++i) {
        if (i > 0) {
          cur += locals[i - 1].extent + hints.gap + locals[i].extent;
        }
        xs.push_back(cur);
      }
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
      for (std::size_t j = i + 1; j < xs.size(); ++j) {
        if (std::abs(xs[i] - xs[j])
            <= locals[i].extent + locals[j].extent + 1e-6) {
          throw LayoutFailure("factors " + std::to_string(i + 1) + " and "
                              + std::to_string(j + 1) + " collide");
        }
      }
    }

    Realization out;
    for (std::size_t i = 0; i < locals.size(); ++i) {
      auto sys = locals[i].system;
      auto T   = MoebiusMap::translation(xs[i]);
      sys.transform(T, tol);
      for (auto const& m : locals[i].maps) {
        out.generators.push_back(conjugate_by(T, m));
      }
      out.system.append(sys);
    }
    out.system.basepoint = ProjectivePoint::infinity();
    for (std::size_t i = 0; i < out.system.entries.size(); ++i) {
      out.system.entries[i].label = "C" + std::to_string(i);
    }

    for (std::size_t g = 0; g < p.generators.size(); ++g) {
      auto got  = classify(out.generators[g], tol);
      auto want = expected_class(p.generators[g]);
      if (!(got == want)) {
        throw LayoutFailure("generator " + p.generators[g].name
                            + " realized as " + to_string(got) + ", expected "
                            + to_string(want));
      }
    }
    for (auto const& rel : p.relators) {
      auto m = evaluate_word(out.generators, rel);
      if (!m.approx_equal(MoebiusMap::identity(), 1e3 * tol.eps)) {
        throw LayoutFailure("relator " + rel.to_string(p.names())
                            + " fails geometrically");
      }
    }
    out.report = verify_schottky_system(out.system, tol);
    if (!out.report.passed) {
      throw LayoutFailure("realized system fails the checker: "
                          + out.report.condition + ": " + out.report.detail);
    }
    return out;
  }

}  // namespace schottky

#endif  // SCHOTTKY_REALIZE_HPP_
