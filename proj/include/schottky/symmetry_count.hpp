#ifndef SCHOTTKY_SYMMETRY_COUNT_HPP_
#define SCHOTTKY_SYMMETRY_COUNT_HPP_

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "finite_groups.hpp"
#include "quotient.hpp"
#include "structure.hpp"

namespace schottky {

  enum class SymmetryKind { reflection, imaginary_reflection };

  inline std::string to_string(SymmetryKind k) {
    return k == SymmetryKind::reflection ? "reflection"
                                         : "imaginary_reflection";
  }

  // One representative of a conjugacy class of orientation-reversing
  // involutions, with generators of its centralizer.
  struct CanonicalSymmetry {
    Word              word;
    SymmetryKind      kind = SymmetryKind::reflection;
    std::vector<Word> centralizer;
    bool              infinite_centralizer = false;
    std::size_t       factor               = 0;
    std::string       label;
  };

  inline std::vector<CanonicalSymmetry> complete_symmetry_set(
      StructuralGroup const& s) {
    std::vector<CanonicalSymmetry> out;
    auto const&                    names = s.presentation().names();
    auto gen = [](std::size_t i) { return Word::generator(i); };
    for (std::size_t fi = 0; fi < s.factors().size(); ++fi) {
      auto const& f   = s.factors()[fi];
      auto const& lay = s.layout()[fi];
      switch (f.kind) {
        case FactorKind::reflection:
        case FactorKind::imaginary_reflection: {
          auto k = f.kind == FactorKind::reflection
                       ? SymmetryKind::reflection
                       : SymmetryKind::imaginary_reflection;
          out.push_back({gen(lay.first), k, {gen(lay.first)}, false, fi,
                         names[lay.first]});
          break;
        }
        case FactorKind::loxodromic:
        case FactorKind::glide_reflection:
          break;
        case FactorKind::type_v: {
          Word              sg = gen(lay.sigma);
          std::vector<Word> whole;
          for (std::size_t i = lay.first; i < lay.first + lay.count; ++i) {
            whole.push_back(gen(i));
          }
          out.push_back({sg, SymmetryKind::reflection, whole,
                         f.v.is_infinite(), fi, names[lay.sigma]});
          for (auto i : lay.involutions) {
            auto k = s.presentation().generators[i].role
                             == GenRole::imaginary_involution
                         ? SymmetryKind::imaginary_reflection
                         : SymmetryKind::reflection;
            out.push_back({gen(i), k, {sg, gen(i)}, false, fi, names[i]});
          }
          for (std::size_t k = 0; k < lay.elliptics.size(); ++k) {
            int o = f.v.elliptic_orders[k];
            if (o % 2 == 0) {
              auto t = gen(lay.elliptics[k]);
              out.push_back({sg * t.pow(o / 2),
                             SymmetryKind::imaginary_reflection,
                             {sg, t},
                             false,
                             fi,
                             names[lay.sigma] + " " + names[lay.elliptics[k]]
                                 + (o == 2 ? "" : "^" + std::to_string(o / 2))});
            }
          }
          for (std::size_t k = 0; k < lay.corners.size(); ++k) {
            int  ck = f.v.corners[k];
            auto a  = gen(lay.corners[k].first);
            auto b  = gen(lay.corners[k].second);
            auto ab = a * b;
            if (ck % 2 == 1) {
              out.push_back({a, SymmetryKind::reflection, {sg, a}, false, fi,
                             names[lay.corners[k].first]});
              continue;
            }
            auto z = ab.pow(ck / 2);
            out.push_back({a, SymmetryKind::reflection, {sg, a, z}, false, fi,
                           names[lay.corners[k].first]});
            out.push_back({b, SymmetryKind::reflection, {sg, b, z}, false, fi,
                           names[lay.corners[k].second]});
            out.push_back({sg * z, SymmetryKind::imaginary_reflection,
                           {sg, a, b}, false, fi,
                           names[lay.sigma] + " (" + names[lay.corners[k].first]
                               + " " + names[lay.corners[k].second] + ")^"
                               + std::to_string(ck / 2)});
          }
          break;
        }
      }
    }
    return out;
  }

  struct ProfileTerm {
    std::size_t  symmetry = 0;  // index into complete_symmetry_set
    SymmetryKind kind     = SymmetryKind::reflection;
    bool         infinite_centralizer = false;
    std::size_t  index    = 0;  // [C(G, theta c) : theta C(K, c)]
  };

  struct FixedPointProfile {
    long long alpha   = 0;  // disc components
    long long beta    = 0;  // isolated fixed points
    long long epsilon = 0;  // non-simply-connected surface components
    bool      fixed_point_free = false;
    std::vector<ProfileTerm> terms;

    long long m() const noexcept {
      return alpha + beta + epsilon;
    }
  };

  namespace detail {
    // Checks shared by all profile computations; returns the orientation
    // parity of the target elements.
    inline std::vector<std::uint8_t> require_schottky_kernel(
        Epimorphism const& e) {
      auto v = validate(e);
      if (!v.ok()) {
        throw InvalidEpimorphism(v.violations.front());
      }
      auto t = kernel_torsion_free(e);
      if (!t.torsion_free) {
        throw KernelNotTorsionFree(
            "finite-order element in the kernel: "
            + t.witness->to_string(e.source().presentation().names()));
      }
      auto o = kernel_orientation_check(e);
      if (!o.consistent) {
        throw KernelNotOrientationPreserving(
            "orientation-reversing element in the kernel: "
            + o.witness->to_string(e.source().presentation().names()));
      }
      return o.parity;
    }

    inline FixedPointProfile profile_unchecked(
        Epimorphism const&                    e,
        std::vector<CanonicalSymmetry> const& syms,
        std::uint32_t                         tau) {
      auto const&       G = e.target();
      FixedPointProfile p;
      for (std::size_t j = 0; j < syms.size(); ++j) {
        std::uint32_t c = e.evaluate(syms[j].word);
        if (!G.conjugate(c, tau)) {
          continue;
        }
        std::vector<std::uint32_t> cent;
        for (auto const& w : syms[j].centralizer) {
          cent.push_back(e.evaluate(w));
        }
        std::size_t big   = G.centralizer_of(c).size();
        std::size_t small = G.closure(cent).size();
        ProfileTerm t{j, syms[j].kind, syms[j].infinite_centralizer,
                      big / small};
        if (t.kind == SymmetryKind::imaginary_reflection) {
          p.beta += t.index;
        } else if (t.infinite_centralizer) {
          p.epsilon += t.index;
        } else {
          p.alpha += t.index;
        }
        p.terms.push_back(t);
      }
      p.fixed_point_free = p.terms.empty();
      return p;
    }
  }  // namespace detail

  // Component counts of the fixed-point set of the symmetry tau of the
  // handlebody uniformized by the kernel.
  inline FixedPointProfile fixed_point_profile(Epimorphism const& e,
                                               GroupElement       tau) {
    e.target().check(tau);
    auto parity = detail::require_schottky_kernel(e);
    if (e.target().order_of(tau.index) != 2) {
      throw PreconditionViolation("tau is not an involution");
    }
    if (parity[tau.index] != 1) {
      throw PreconditionViolation(
          "tau is not the image of an orientation-reversing element");
    }
    return detail::profile_unchecked(e, complete_symmetry_set(e.source()),
                                     tau.index);
  }

  struct ClassProfile {
    std::uint32_t     representative = 0;  // smallest element of the class
    std::size_t       class_size     = 0;
    FixedPointProfile profile;
  };

  // One profile per conjugacy class of symmetries (orientation-reversing
  // involutions) of the target.
  inline std::vector<ClassProfile> all_profiles(Epimorphism const& e) {
    auto        parity = detail::require_schottky_kernel(e);
    auto const& G      = e.target();
    auto        syms   = complete_symmetry_set(e.source());
    std::vector<ClassProfile> out;
    for (std::uint32_t x = 0; x < G.order(); ++x) {
      if (G.order_of(x) != 2 || parity[x] != 1
          || G.class_representative(x) != x) {
        continue;
      }
      out.push_back({x, G.conjugacy_class_of(x).size(),
                     detail::profile_unchecked(e, syms, x)});
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Bounds
  ////////////////////////////////////////////////////////////////////////

  inline long long pair_bound(long long g, long long q) {
    if (g < 2 || q < 2) {
      throw PreconditionViolation("pair bound needs g >= 2 and q >= 2");
    }
    return 2 * ((g - 1) / q) + 4;
  }

  // Identifies H = <tau1, tau2, tau3> up to the one distinction the triple
  // bound needs.
  struct TripleDescriptor {
    bool      z2_times_dihedral = false;
    long long r                 = 0;

    bool operator==(TripleDescriptor const&) const = default;
  };

  inline Rational triple_bound(long long g, TripleDescriptor const& h) {
    if (g < 2) {
      throw PreconditionViolation("triple bound needs g >= 2");
    }
    if (g == 2) {
      return Rational(5);
    }
    if (g == 3) {
      return Rational(8);
    }
    if (!h.z2_times_dihedral) {
      return Rational(g + 5);
    }
    if (h.r < 1) {
      throw PreconditionViolation("Z2 x D_r descriptor needs r >= 1");
    }
    return Rational((h.r + 1) * g + 5 * h.r - 1, h.r);
  }

  struct RiemannBounds {
    Rational  odd_bound;           // q odd
    Rational  even_bound;          // q even
    long long noncommuting_bound;  // floor(2(g-1)/q) + 3
    bool      noncommuting_applies = false;

    bool operator==(RiemannBounds const&) const = default;
  };

  inline RiemannBounds riemann_comparison_bounds(long long g, long long q) {
    if (g < 2 || q < 2) {
      throw PreconditionViolation("Riemann bounds need g >= 2 and q >= 2");
    }
    RiemannBounds b;
    b.odd_bound            = Rational(2 * (g - 1), q) + Rational(4);
    b.even_bound           = Rational(4 * g, q) + Rational(2);
    b.noncommuting_bound   = 2 * (g - 1) / q + 3;
    b.noncommuting_applies = q >= 3 && (g - 1) % q != 0;
    return b;
  }

  struct PairBoundCheck {
    std::uint32_t tau1 = 0, tau2 = 0;
    long long     m1 = 0, m2 = 0;
    long long     q  = 0;
    long long     bound = 0;
    RiemannBounds riemann;
    bool          sharp    = false;
    bool          violated = false;
    // Sum g + 3 forces <tau1, tau2> = Z2^2.
    bool          klein_four_required = false;
    bool          klein_four          = false;
  };

  struct TripleBoundCheck {
    std::uint32_t    tau1 = 0, tau2 = 0, tau3 = 0;
    long long        m1 = 0, m2 = 0, m3 = 0;
    TripleDescriptor h;
    Rational         bound;
    bool             sharp    = false;
    bool             violated = false;
  };

  struct BoundsReport {
    long long                       g = 0;
    std::vector<PairBoundCheck>     pairs;
    std::optional<TripleBoundCheck> triple;
    // At most one involution class can have m = g + 1.
    std::size_t                     maximal_classes = 0;

    bool violated() const {
      bool v = maximal_classes > 1;
      for (auto const& p : pairs) {
        v = v || p.violated || (p.klein_four_required && !p.klein_four);
      }
      return v || (triple && triple->violated);
    }
  };

  inline TripleDescriptor describe_subgroup(FiniteGroup const&                G,
                                            std::vector<std::uint32_t> const& h) {
    auto r = as_z2_times_dihedral(G, G.closure(h));
    return r ? TripleDescriptor{true, static_cast<long long>(*r)}
             : TripleDescriptor{};
  }

  // Checks the pair bounds for every pair of designated symmetries and the
  // triple bound for the first three.  g must be at least 2.
  inline BoundsReport check_bounds(Epimorphism const&                e,
                                   long long                         g,
                                   std::vector<std::uint32_t> const& taus) {
    auto const&  G = e.target();
    BoundsReport b;
    b.g         = g;
    auto syms   = complete_symmetry_set(e.source());
    auto parity = detail::require_schottky_kernel(e);
    std::vector<long long> m;
    for (auto t : taus) {
      if (G.order_of(t) != 2 || parity[t] != 1) {
        throw PreconditionViolation("designated element " + G.name_of(t)
                                    + " is not a symmetry");
      }
      m.push_back(detail::profile_unchecked(e, syms, t).m());
    }
    for (std::uint32_t x = 0; x < G.order(); ++x) {
      if (G.order_of(x) == 2 && parity[x] == 1
          && G.class_representative(x) == x
          && detail::profile_unchecked(e, syms, x).m() == g + 1) {
        ++b.maximal_classes;
      }
    }
    for (std::size_t i = 0; i < taus.size(); ++i) {
      for (std::size_t j = i + 1; j < taus.size(); ++j) {
        PairBoundCheck p;
        p.tau1 = taus[i];
        p.tau2 = taus[j];
        p.m1   = m[i];
        p.m2   = m[j];
        p.q    = G.order_of(G.mul(taus[i], taus[j]));
        if (p.q < 2) {
          continue;  // equal symmetries
        }
        p.bound    = pair_bound(g, p.q);
        p.riemann  = riemann_comparison_bounds(g, p.q);
        p.sharp    = p.m1 + p.m2 == p.bound;
        p.violated = p.m1 + p.m2 > p.bound;
        p.klein_four_required = p.m1 + p.m2 == g + 3;
        p.klein_four          = p.q == 2;
        b.pairs.push_back(p);
      }
    }
    if (taus.size() >= 3) {
      TripleBoundCheck t;
      t.tau1     = taus[0];
      t.tau2     = taus[1];
      t.tau3     = taus[2];
      t.m1       = m[0];
      t.m2       = m[1];
      t.m3       = m[2];
      t.h        = describe_subgroup(G, {taus[0], taus[1], taus[2]});
      t.bound    = triple_bound(g, t.h);
      Rational s = Rational(t.m1 + t.m2 + t.m3);
      t.sharp    = s == t.bound;
      t.violated = s > t.bound;
      b.triple   = t;
    }
    return b;
  }

}  // namespace schottky

#endif  // SCHOTTKY_SYMMETRY_COUNT_HPP_
