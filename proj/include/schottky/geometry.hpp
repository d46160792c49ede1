#ifndef SCHOTTKY_GEOMETRY_HPP_
#define SCHOTTKY_GEOMETRY_HPP_

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "gencircle.hpp"
#include "moebius.hpp"

namespace schottky {

  // The anticonformal involution fixing c pointwise.
  inline MoebiusMap reflect_in(GenCircle const& c) {
    if (c.is_line()) {
      Complex n = c.normal();
      return MoebiusMap(-n * n, 2 * c.offset() * n, 0, 1,
                        Orientation::reversing);
    }
    Complex p = c.center();
    double  r = c.radius();
    return MoebiusMap(p, r * r - std::norm(p), 1, -std::conj(p),
                      Orientation::reversing);
  }

  // z -> c - r^2 / conj(z - c): the antipodal map conjugated so that it
  // preserves the circle (c, r) while swapping its sides.
  inline MoebiusMap imaginary_reflection(Complex c, double r) {
    return MoebiusMap(c, -r * r - std::norm(c), 1, -std::conj(c),
                      Orientation::reversing);
  }

  inline HermitianForm map_form(MoebiusMap const& f, HermitianForm const& h) {
    // With N = M^-1, the image form is N^* H N, where H is conjugated first
    // for reversing maps.
    Mat2 const& m = f.matrix();
    Complex     n00 = m[3], n01 = -m[1], n10 = -m[2], n11 = m[0];
    Complex     B   = f.is_reversing() ? std::conj(h.B) : h.B;
    // H N
    Complex hn00 = h.A * n00 + B * n10;
    Complex hn01 = h.A * n01 + B * n11;
    Complex hn10 = std::conj(B) * n00 + h.C * n10;
    Complex hn11 = std::conj(B) * n01 + h.C * n11;
    HermitianForm out;
    out.A = (std::conj(n00) * hn00 + std::conj(n10) * hn10).real();
    out.B = std::conj(n00) * hn01 + std::conj(n10) * hn11;
    out.C = (std::conj(n01) * hn01 + std::conj(n11) * hn11).real();
    return out;
  }

  inline GenCircle map_circle(MoebiusMap const& f,
                              GenCircle const&  c,
                              Tolerance         tol = {}) {
    return GenCircle::from_form(map_form(f, c.form()), tol);
  }

  ////////////////////////////////////////////////////////////////////////
  // Circle systems
  ////////////////////////////////////////////////////////////////////////

  enum class EntryKind {
    // map sends this circle onto the partner's, outside to inside.
    paired,
    // map preserves the circle and swaps its sides (reflection, imaginary
    // reflection, half-turn).
    self_paired,
    // reflection in the circle itself, used for the mirror of a factor that
    // commutes with it, and for dihedral corners.  Mirrors in the same block
    // may meet each other at angles pi/k and may cut circles of the block
    // that they preserve.
    mirror
  };

  struct CircleEntry {
    GenCircle   circle;
    EntryKind   kind;
    MoebiusMap  map;
    std::size_t partner = 0;   // paired only
    int         block   = -1;  // < 0 means no block
    std::string label;
  };

  class CircleSystem {
   public:
    std::vector<CircleEntry>       entries;
    std::optional<ProjectivePoint> basepoint;

    // Adds c and c2 = f(c); returns the index of c.
    std::size_t add_pair(GenCircle const&  c,
                         GenCircle const&  c2,
                         MoebiusMap const& f,
                         int               block = -1,
                         std::string       label = "") {
      std::size_t i = entries.size();
      entries.push_back({c, EntryKind::paired, f, i + 1, block, label});
      entries.push_back({c2,
                         EntryKind::paired,
                         f.inverse(),
                         i,
                         block,
                         label.empty() ? label : label + "'"});
      return i;
    }

    std::size_t add_self_paired(GenCircle const&  c,
                                MoebiusMap const& f,
                                int               block = -1,
                                std::string       label = "") {
      entries.push_back({c, EntryKind::self_paired, f, 0, block, label});
      return entries.size() - 1;
    }

    std::size_t add_mirror(GenCircle const& c,
                           int              block,
                           std::string      label = "") {
      entries.push_back({c, EntryKind::mirror, reflect_in(c), 0, block, label});
      return entries.size() - 1;
    }

    void transform(MoebiusMap const& h, Tolerance tol = {}) {
      for (auto& e : entries) {
        e.circle = map_circle(h, e.circle, tol);
        e.map    = conjugate_by(h, e.map);
      }
      if (basepoint) {
        basepoint = h.apply(*basepoint);
      }
    }

    void append(CircleSystem const& other) {
      std::size_t shift = entries.size();
      for (auto e : other.entries) {
        if (e.kind == EntryKind::paired) {
          e.partner += shift;
        }
        entries.push_back(std::move(e));
      }
    }
  };

  struct VerificationReport {
    bool        passed = true;
    std::string condition;  // "disjointness", "pairing", "ping-pong", ...
    std::string detail;
    std::optional<std::pair<std::size_t, std::size_t>> offending;
  };

  namespace detail {

    // Form value at p, scaled so it is comparable across circles and
    // points: form with discriminant 1, point with |z0|^2 + |z1|^2 = 1.
    inline double signed_value(HermitianForm const&   h,
                               ProjectivePoint const& p) {
      auto   n  = h.normalized();
      double s  = std::norm(p.z0()) + std::norm(p.z1());
      double sc = std::max({std::abs(n.A), std::abs(n.B), std::abs(n.C), 1.0});
      return n.value(p.z0(), p.z1()) / (s * sc);
    }

    inline ProjectivePoint choose_basepoint(CircleSystem const& s) {
      bool has_line = false;
      for (auto const& e : s.entries) {
        has_line = has_line || e.circle.is_line();
      }
      if (!has_line) {
        return ProjectivePoint::infinity();
      }
      // Look for the candidate furthest from every circle, preferring
      // points far from the configuration.
      double lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
      bool   first = true;
      for (auto const& e : s.entries) {
        Complex p = e.circle.is_line() ? e.circle.normal() * e.circle.offset()
                                       : e.circle.center();
        double  r = e.circle.is_line() ? 0.0 : e.circle.radius();
        if (first) {
          lo_x = p.real() - r, hi_x = p.real() + r;
          lo_y = p.imag() - r, hi_y = p.imag() + r;
          first = false;
        }
        lo_x = std::min(lo_x, p.real() - r);
        hi_x = std::max(hi_x, p.real() + r);
        lo_y = std::min(lo_y, p.imag() - r);
        hi_y = std::max(hi_y, p.imag() + r);
      }
      double w = std::max({hi_x - lo_x, hi_y - lo_y, 1.0});
      Complex mid((lo_x + hi_x) / 2, (lo_y + hi_y) / 2);
      ProjectivePoint best;
      double          best_score = -1;
      for (int i = -12; i <= 12; ++i) {
        for (int j = -12; j <= 12; ++j) {
          Complex         z = mid + Complex(i, j) * (w / 6);
          ProjectivePoint p(z);
          double          score = 1e300;
          for (auto const& e : s.entries) {
            score = std::min(score,
                             std::abs(signed_value(e.circle.form(), p)));
          }
          if (score > best_score) {
            best_score = score;
            best       = p;
          }
        }
      }
      return best;
    }

  }  // namespace detail

  // Checks the combination-theorem hypotheses for the system: the closed
  // discs (sides not containing the basepoint) are pairwise disjoint apart
  // from the allowed mirror contacts, each map sends its circle where it
  // should, and each map moves the basepoint into the right disc.
  inline VerificationReport verify_schottky_system(CircleSystem const& s,
                                                   Tolerance tol = {}) {
    using K = TransformClass::Kind;
    if (s.entries.empty()) {
      throw PreconditionViolation("empty circle system");
    }
    ProjectivePoint bp = s.basepoint ? *s.basepoint
                                     : detail::choose_basepoint(s);
    std::size_t const     n = s.entries.size();
    std::vector<HermitianForm> inside_neg(n);  // negative inside the disc
    for (std::size_t i = 0; i < n; ++i) {
      HermitianForm h = s.entries[i].circle.form().normalized();
      double        v = detail::signed_value(h, bp);
      if (std::abs(v) <= tol.eps) {
        return {false, "basepoint",
                "basepoint lies on circle " + std::to_string(i),
                std::make_pair(i, i)};
      }
      inside_neg[i] = v > 0 ? h : h.scaled(-1);
    }

    auto fail = [](std::string cond, std::string detail, std::size_t i,
                   std::size_t j) {
      return VerificationReport{false, std::move(cond), std::move(detail),
                                std::make_pair(i, j)};
    };

    // Pairing consistency and images.
    for (std::size_t i = 0; i < n; ++i) {
      auto const& e = s.entries[i];
      switch (e.kind) {
        case EntryKind::paired: {
          if (e.partner >= n || e.partner == i) {
            return fail("pairing", "bad partner index", i, e.partner);
          }
          auto const& f = s.entries[e.partner];
          if (f.kind != EntryKind::paired || f.partner != i
              || !f.map.approx_equal(e.map.inverse(), 1e3 * tol.eps)) {
            return fail("pairing", "partner does not pair back", i,
                        e.partner);
          }
          GenCircle img = map_circle(e.map, e.circle, tol);
          if (!img.approx_equal(f.circle, 1e3 * tol.eps)) {
            return fail("pairing", "map does not send circle to partner", i,
                        e.partner);
          }
          break;
        }
        case EntryKind::self_paired: {
          GenCircle img = map_circle(e.map, e.circle, tol);
          if (!img.approx_equal(e.circle, 1e3 * tol.eps)) {
            return fail("pairing", "self-pairing does not preserve circle", i,
                        i);
          }
          auto cls = classify(e.map, tol);
          bool inv = cls.kind == K::reflection
                     || cls.kind == K::imaginary_reflection
                     || (cls.kind == K::elliptic && cls.order == 2);
          if (!inv) {
            return fail("pairing", "self-pairing is not an involution", i, i);
          }
          break;
        }
        case EntryKind::mirror: {
          if (!e.map.approx_equal(reflect_in(e.circle), 1e3 * tol.eps)) {
            return fail("pairing", "mirror map is not the reflection", i, i);
          }
          break;
        }
      }
    }

    // Disjointness.
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        auto const& a = s.entries[i];
        auto const& b = s.entries[j];
        // cos of the angle of the common exterior where the circles meet;
        // > 1 when the discs are disjoint.
        double delta = -inversive_product(inside_neg[i], inside_neg[j]);
        std::string where = std::to_string(i) + "," + std::to_string(j);

        bool same_block = a.block >= 0 && a.block == b.block;
        if (same_block
            && (a.kind == EntryKind::mirror || b.kind == EntryKind::mirror)) {
          if (a.kind == EntryKind::mirror && b.kind == EntryKind::mirror) {
            bool ok = false;
            for (int k = 2; k <= 64 && !ok; ++k) {
              ok = std::abs(delta - std::cos(std::numbers::pi / k))
                   <= 1e3 * tol.eps;
            }
            if (ok) {
              continue;
            }
          }
          auto const& m     = a.kind == EntryKind::mirror ? a : b;
          auto const& other = a.kind == EntryKind::mirror ? b : a;
          if (map_circle(m.map, other.circle, tol)
                  .approx_equal(other.circle, 1e3 * tol.eps)) {
            continue;
          }
        }
        if (a.kind == EntryKind::paired && a.partner == j) {
          auto cls = classify(a.map, tol);
          if (cls.kind == K::elliptic) {
            if (cls.order < 3) {
              return fail("pairing", "elliptic pairing of unknown order", i,
                          j);
            }
            double want = std::cos(2 * std::numbers::pi / cls.order);
            if (std::abs(delta - want) <= 1e3 * tol.eps) {
              continue;
            }
            return fail("disjointness",
                        "elliptic pair circles meet at the wrong angle ("
                            + where + ")",
                        i, j);
          }
        }
        if (std::abs(delta - 1) <= tol.band()) {
          throw NumericallyAmbiguous("circles " + where
                                     + " are tangent within tolerance");
        }
        if (delta < 1) {
          return fail("disjointness", "discs " + where + " intersect", i, j);
        }
      }
    }

    // Ping-pong: every map carries the common exterior into a disc.
    for (std::size_t i = 0; i < n; ++i) {
      auto const&     e      = s.entries[i];
      std::size_t     target = e.kind == EntryKind::paired ? e.partner : i;
      ProjectivePoint q      = e.map.apply(bp);
      double          v      = detail::signed_value(inside_neg[target], q);
      if (std::abs(v) <= tol.eps) {
        throw NumericallyAmbiguous("image of the basepoint lies on circle "
                                   + std::to_string(target));
      }
      if (v > 0) {
        return fail("ping-pong",
                    "map " + std::to_string(i)
                        + " does not send the exterior into disc "
                        + std::to_string(target),
                    i, target);
      }
    }
    return {};
  }

}  // namespace schottky

#endif  // SCHOTTKY_GEOMETRY_HPP_
