#ifndef SCHOTTKY_STRUCTURE_HPP_
#define SCHOTTKY_STRUCTURE_HPP_

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "errors.hpp"
#include "moebius.hpp"
#include "word.hpp"

namespace schottky {

  using Rational = boost::rational<long long>;

  enum class FactorKind {
    reflection,            // type (i)
    imaginary_reflection,  // type (ii)
    loxodromic,            // type (iii), counted by gamma
    glide_reflection,      // type (iv), counted by delta
    type_v                 // Z2 x W with W a free product, counted by epsilon
  };

  inline std::string to_string(FactorKind k) {
    switch (k) {
      case FactorKind::reflection:
        return "reflection";
      case FactorKind::imaginary_reflection:
        return "imaginary_reflection";
      case FactorKind::loxodromic:
        return "loxodromic";
      case FactorKind::glide_reflection:
        return "glide_reflection";
      case FactorKind::type_v:
        return "type_v";
    }
    return "?";
  }

  // Parameters of a factor <sigma> x W.  W is the free product of
  //  - cyclic groups <t_k> of the given elliptic orders,
  //  - commuting_involutions copies of Z2 (the last imaginary_involutions of
  //    them are imaginary reflections, the rest reflections),
  //  - one dihedral group D_k per entry of corners, generated by two
  //    reflections meeting at angle pi/k,
  //  - a free group of rank schottky_rank.
  struct TypeVParams {
    std::vector<int> elliptic_orders;
    int              commuting_involutions = 0;
    int              imaginary_involutions = 0;
    std::vector<int> corners;
    int              schottky_rank = 0;

    bool operator==(TypeVParams const&) const = default;

    std::size_t w_factor_count() const noexcept {
      return elliptic_orders.size() + commuting_involutions + corners.size()
             + schottky_rank;
    }
    bool is_real_schottky() const noexcept {
      return elliptic_orders.empty() && commuting_involutions == 0
             && corners.empty();
    }
    // True iff W, and hence the factor, is infinite.
    bool is_infinite() const noexcept {
      return w_factor_count() >= 2 || schottky_rank >= 1;
    }
  };

  struct FactorSpec {
    FactorKind  kind = FactorKind::reflection;
    TypeVParams v;
    std::string name;  // optional; generator name or prefix

    bool operator==(FactorSpec const&) const = default;

    static FactorSpec reflection(std::string name = "") {
      return {FactorKind::reflection, {}, std::move(name)};
    }
    static FactorSpec imaginary_reflection(std::string name = "") {
      return {FactorKind::imaginary_reflection, {}, std::move(name)};
    }
    static FactorSpec loxodromic(std::string name = "") {
      return {FactorKind::loxodromic, {}, std::move(name)};
    }
    static FactorSpec glide_reflection(std::string name = "") {
      return {FactorKind::glide_reflection, {}, std::move(name)};
    }
    static FactorSpec type_v(TypeVParams p, std::string name = "") {
      return {FactorKind::type_v, std::move(p), std::move(name)};
    }
  };

  enum class GenRole {
    reflection,
    imaginary_reflection,
    loxodromic,
    glide_reflection,
    sigma,
    elliptic,
    involution,
    imaginary_involution,
    corner_a,
    corner_b,
    free
  };

  struct Generator {
    std::string name;
    int         order = 0;  // 0 = infinite
    Orientation orientation = Orientation::preserving;
    std::size_t factor      = 0;
    GenRole     role        = GenRole::reflection;
    int         slot        = 0;  // index within its role in the factor
  };

  struct Presentation {
    std::vector<Generator> generators;
    std::vector<Word>      relators;

    std::vector<int> orders() const {
      std::vector<int> o;
      for (auto const& g : generators) {
        o.push_back(g.order);
      }
      return o;
    }
    std::vector<std::string> names() const {
      std::vector<std::string> n;
      for (auto const& g : generators) {
        n.push_back(g.name);
      }
      return n;
    }
    std::size_t index_of(std::string const& name) const {
      for (std::size_t i = 0; i < generators.size(); ++i) {
        if (generators[i].name == name) {
          return i;
        }
      }
      throw std::out_of_range("no generator named " + name);
    }
  };

  // Where a factor's generators live in the presentation.
  struct FactorLayout {
    std::size_t first = 0;  // index of the first generator
    std::size_t count = 0;
    // TypeV only:
    std::size_t              sigma = 0;
    std::vector<std::size_t> elliptics;
    std::vector<std::size_t> involutions;
    std::vector<std::pair<std::size_t, std::size_t>> corners;
    std::vector<std::size_t>                         free;
  };

  class StructuralGroup {
   public:
    StructuralGroup() = default;
    explicit StructuralGroup(std::vector<FactorSpec> factors)
        : _factors(std::move(factors)) {
      check();
      build();
      auto names = _presentation.names();
      std::sort(names.begin(), names.end());
      auto dup = std::adjacent_find(names.begin(), names.end());
      if (dup != names.end()) {
        throw InvalidStructure("duplicate generator name " + *dup);
      }
    }

    std::vector<FactorSpec> const& factors() const noexcept {
      return _factors;
    }
    Presentation const& presentation() const noexcept {
      return _presentation;
    }
    std::vector<FactorLayout> const& layout() const noexcept {
      return _layout;
    }
    std::size_t generator_count() const noexcept {
      return _presentation.generators.size();
    }

    // Reflection, imaginary reflection, loxodromic, glide, TypeV counts.
    int alpha() const noexcept {
      return count(FactorKind::reflection);
    }
    int beta() const noexcept {
      return count(FactorKind::imaginary_reflection);
    }
    int gamma() const noexcept {
      return count(FactorKind::loxodromic);
    }
    int delta() const noexcept {
      return count(FactorKind::glide_reflection);
    }
    int epsilon() const noexcept {
      return count(FactorKind::type_v);
    }
    int total_schottky_rank() const noexcept {
      int r = 0;
      for (auto const& f : _factors) {
        if (f.kind == FactorKind::type_v) {
          r += f.v.schottky_rank;
        }
      }
      return r;
    }
    bool has_corners() const noexcept {
      for (auto const& f : _factors) {
        if (f.kind == FactorKind::type_v && !f.v.corners.empty()) {
          return true;
        }
      }
      return false;
    }

    bool operator==(StructuralGroup const& o) const {
      return _factors == o._factors;
    }

   private:
    int count(FactorKind k) const noexcept {
      int n = 0;
      for (auto const& f : _factors) {
        n += f.kind == k;
      }
      return n;
    }

    void check() const {
      for (auto const& f : _factors) {
        if (f.kind != FactorKind::type_v) {
          if (!(f.v == TypeVParams{})) {
            throw InvalidStructure("only TypeV factors take parameters");
          }
          continue;
        }
        auto const& v = f.v;
        for (int o : v.elliptic_orders) {
          if (o < 2) {
            throw InvalidStructure("elliptic orders must be at least 2");
          }
        }
        for (int k : v.corners) {
          if (k < 2) {
            throw InvalidStructure("corner orders must be at least 2");
          }
        }
        if (v.commuting_involutions < 0 || v.imaginary_involutions < 0
            || v.schottky_rank < 0) {
          throw InvalidStructure("negative TypeV count");
        }
        if (v.imaginary_involutions > v.commuting_involutions) {
          throw InvalidStructure(
              "more imaginary involutions than commuting involutions");
        }
      }
    }

    void build() {
      auto& gens = _presentation.generators;
      auto& rels = _presentation.relators;
      for (std::size_t fi = 0; fi < _factors.size(); ++fi) {
        auto const&  f   = _factors[fi];
        std::string  idx = std::to_string(fi + 1);
        FactorLayout lay;
        lay.first  = gens.size();
        auto add   = [&](std::string name, int order, Orientation o,
                       GenRole role, int slot) {
          gens.push_back({std::move(name), order, o, fi, role, slot});
          if (order > 0) {
            rels.push_back(Word::generator(gens.size() - 1, order));
          }
          return gens.size() - 1;
        };
        auto const R = Orientation::reversing;
        auto const P = Orientation::preserving;
        switch (f.kind) {
          case FactorKind::reflection:
            add(f.name.empty() ? "E" + idx : f.name, 2, R, GenRole::reflection,
                0);
            break;
          case FactorKind::imaginary_reflection:
            add(f.name.empty() ? "J" + idx : f.name, 2, R,
                GenRole::imaginary_reflection, 0);
            break;
          case FactorKind::loxodromic:
            add(f.name.empty() ? "L" + idx : f.name, 0, P, GenRole::loxodromic,
                0);
            break;
          case FactorKind::glide_reflection:
            add(f.name.empty() ? "G" + idx : f.name, 0, R,
                GenRole::glide_reflection, 0);
            break;
          case FactorKind::type_v: {
            std::string p = f.name.empty() ? "S" + idx : f.name;
            auto const& v = f.v;
            lay.sigma     = add(p, 2, R, GenRole::sigma, 0);
            for (std::size_t k = 0; k < v.elliptic_orders.size(); ++k) {
              lay.elliptics.push_back(add(p + ".t" + std::to_string(k + 1),
                                          v.elliptic_orders[k], P,
                                          GenRole::elliptic, int(k)));
            }
            int real = v.commuting_involutions - v.imaginary_involutions;
            for (int k = 0; k < v.commuting_involutions; ++k) {
              lay.involutions.push_back(add(
                  p + ".s" + std::to_string(k + 1), 2, R,
                  k < real ? GenRole::involution
                           : GenRole::imaginary_involution,
                  k));
            }
            for (std::size_t k = 0; k < v.corners.size(); ++k) {
              std::string c  = p + ".c" + std::to_string(k + 1);
              std::size_t a  = add(c + "a", 2, R, GenRole::corner_a, int(k));
              std::size_t b  = add(c + "b", 2, R, GenRole::corner_b, int(k));
              Word        ab = Word::generator(a) * Word::generator(b);
              rels.push_back(ab.pow(v.corners[k]));
              lay.corners.emplace_back(a, b);
            }
            for (int k = 0; k < v.schottky_rank; ++k) {
              lay.free.push_back(add(p + ".f" + std::to_string(k + 1), 0, P,
                                     GenRole::free, k));
            }
            for (std::size_t g = lay.sigma + 1; g < gens.size(); ++g) {
              Word s = Word::generator(lay.sigma);
              Word x = Word::generator(g);
              rels.push_back(s * x * s.inverse() * x.inverse());
            }
            break;
          }
        }
        lay.count = gens.size() - lay.first;
        _layout.push_back(std::move(lay));
      }
      std::map<std::string, int> seen;
      for (auto const& g : gens) {
        if (seen[g.name]++ > 0) {
          throw InvalidStructure("duplicate generator name " + g.name);
        }
      }
    }

    std::vector<FactorSpec>   _factors;
    Presentation              _presentation;
    std::vector<FactorLayout> _layout;
  };

  ////////////////////////////////////////////////////////////////////////
  // Rank and genus formulas
  ////////////////////////////////////////////////////////////////////////

  // Rank of the orientation-preserving half of an extended Schottky group
  // built from reflections, imaginary reflections, loxodromics, glides and
  // real Schottky factors Z2 x F_r.
  inline long long extended_schottky_rank(StructuralGroup const& s) {
    for (auto const& f : s.factors()) {
      if (f.kind == FactorKind::type_v && !f.v.is_real_schottky()) {
        throw InvalidStructure(
            "extended Schottky structures only allow real Schottky TypeV "
            "factors");
      }
    }
    if (s.alpha() + s.beta() + s.delta() + s.epsilon() == 0) {
      throw InvalidStructure("no orientation-reversing factor");
    }
    return s.alpha() + s.beta() + 2LL * (s.gamma() + s.delta()) + s.epsilon()
           - 1 + s.total_schottky_rank();
  }

  namespace detail {
    inline void require_dihedral_structure(StructuralGroup const& s) {
      if (s.alpha() + s.beta() + s.delta() + s.epsilon() == 0) {
        throw InvalidStructure("no orientation-reversing factor");
      }
      if (s.has_corners()) {
        throw InvalidStructure(
            "dihedral corners inside TypeV factors are not covered by the "
            "genus formula");
      }
    }

    inline long long g_tilde(StructuralGroup const& s) {
      return s.alpha() + s.beta() + 2LL * (s.gamma() + s.delta())
             + s.epsilon() - 1 + s.total_schottky_rank();
    }
  }  // namespace detail

  struct QuotientGenus {
    Rational value;
    bool     integral = false;
  };

  // Kernel rank predicted for a quotient onto D_n.
  inline QuotientGenus dihedral_quotient_genus(StructuralGroup const& s,
                                               long long              n) {
    if (n < 2) {
      throw InvalidStructure("dihedral quotient needs n >= 2");
    }
    detail::require_dihedral_structure(s);
    Rational g(n * (detail::g_tilde(s) - 1) + 1);
    for (auto const& f : s.factors()) {
      if (f.kind != FactorKind::type_v) {
        continue;
      }
      for (int o : f.v.elliptic_orders) {
        g += Rational(n) * (Rational(1) - Rational(1, o));
      }
      g += Rational(n * f.v.commuting_involutions, 2);
    }
    return {g, g.denominator() == 1};
  }

  struct OrbifoldSignature {
    long long        genus = 0;
    std::vector<int> cone_orders;  // sorted descending

    bool operator==(OrbifoldSignature const&) const = default;
  };

  inline OrbifoldSignature orbifold_signature(StructuralGroup const& s) {
    detail::require_dihedral_structure(s);
    OrbifoldSignature sig;
    sig.genus = detail::g_tilde(s);
    for (auto const& f : s.factors()) {
      if (f.kind != FactorKind::type_v) {
        continue;
      }
      for (int o : f.v.elliptic_orders) {
        sig.cone_orders.insert(sig.cone_orders.end(), 2, o);
      }
      sig.cone_orders.insert(sig.cone_orders.end(),
                             2 * f.v.commuting_involutions, 2);
    }
    std::sort(sig.cone_orders.rbegin(), sig.cone_orders.rend());
    return sig;
  }

  inline bool dihedral_criterion(StructuralGroup const& s) {
    detail::require_dihedral_structure(s);
    int abd = s.alpha() + s.beta() + s.delta();
    int e   = s.epsilon();
    if (abd >= 2) {
      return true;
    }
    if (abd == 1) {
      return e > 0;
    }
    if (e >= 2) {
      return true;
    }
    if (e == 1) {
      for (auto const& f : s.factors()) {
        if (f.kind == FactorKind::type_v) {
          return f.v.commuting_involutions > 0;
        }
      }
    }
    return false;
  }

}  // namespace schottky

#endif  // SCHOTTKY_STRUCTURE_HPP_
