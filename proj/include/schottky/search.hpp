#ifndef SCHOTTKY_SEARCH_HPP_
#define SCHOTTKY_SEARCH_HPP_

#include <algorithm>
#include <array>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"
#include "finite_groups.hpp"
#include "quotient.hpp"
#include "structure.hpp"
#include "symmetry_count.hpp"

// Bounded exhaustive search for handlebodies of small genus carrying three
// symmetries with prescribed fixed-point component counts.
//
// A witness is a structural group K, a group H from the catalog, an
// epimorphism K -> H with torsion-free, orientation-preserving kernel of
// rank g, and three distinct symmetries generating H whose component counts
// form the target multiset.  Structures are enumerated exactly by Euler
// characteristic: chi(K) = (1 - g) / |H|.

namespace schottky {

  struct ImpossibilityWitness {
    std::vector<FactorSpec>    factors;
    std::string                group;
    std::vector<std::uint32_t> images;
    std::array<std::uint32_t, 3> taus{};
    std::array<long long, 3>     m{};
  };

  struct ImpossibilitySearchResult {
    long long                         g = 0;
    std::array<long long, 3>          target{};
    std::vector<std::string>          groups;  // catalog actually scanned
    std::size_t                       structures   = 0;
    std::size_t                       epimorphisms = 0;
    std::vector<ImpossibilityWitness> witnesses;
  };

  struct ImpossibilitySearchOptions {
    std::size_t max_witnesses    = std::numeric_limits<std::size_t>::max();
    double      max_search_space = 1e7;
  };

  namespace detail {

    inline std::vector<std::pair<std::string, std::shared_ptr<FiniteGroup const>>>
    three_involution_catalog(long long g) {
      std::vector<std::pair<std::string, std::shared_ptr<FiniteGroup const>>> c;
      long long cap = 24 * (g - 1);
      for (long long q = 3; 2 * q <= cap; ++q) {
        c.emplace_back("D" + std::to_string(q),
                       std::make_shared<FiniteGroup const>(dihedral(q)));
      }
      for (long long r = 2; 4 * r <= cap; ++r) {
        c.emplace_back("Z2xD" + std::to_string(r),
                       std::make_shared<FiniteGroup const>(z2_times_dihedral(r)));
      }
      if (24 <= cap) {
        c.emplace_back("S4", std::make_shared<FiniteGroup const>(z2_ltimes_a4()));
      }
      if (48 <= cap) {
        c.emplace_back("Z2xS4",
                       std::make_shared<FiniteGroup const>(z2_ltimes_s4()));
      }
      return c;
    }

    // One free factor of W inside a TypeV factor.
    struct Piece {
      enum Kind { involution, elliptic, corner, free } kind;
      int n = 0;  // order for elliptic and corner

      Rational chi() const {
        switch (kind) {
          case involution:
            return Rational(1, 2);
          case elliptic:
            return Rational(1, n);
          case corner:
            return Rational(1, 2 * n);
          case free:
            return Rational(0);
        }
        return Rational(0);
      }
    };

    inline TypeVParams to_params(std::vector<Piece> const& ps) {
      TypeVParams v;
      for (auto const& p : ps) {
        switch (p.kind) {
          case Piece::involution:
            ++v.commuting_involutions;
            break;
          case Piece::elliptic:
            v.elliptic_orders.push_back(p.n);
            break;
          case Piece::corner:
            v.corners.push_back(p.n);
            break;
          case Piece::free:
            ++v.schottky_rank;
            break;
        }
      }
      return v;
    }

    // chi(F) - 1 for a top-level factor F; the structure has
    // chi(K) - 1 = sum over factors.
    inline Rational type_v_step(std::vector<Piece> const& ps) {
      Rational chi_w(1);
      for (auto const& p : ps) {
        chi_w += p.chi() - Rational(1);
      }
      return chi_w / Rational(2) - Rational(1);
    }

    // All TypeV parameter sets whose step is at least `budget`.
    inline std::vector<TypeVParams> type_v_candidates(
        Rational budget, std::vector<int> const& orders,
        std::vector<int> const& corner_orders) {
      std::vector<Piece> kinds{{Piece::involution, 0}};
      for (int o : orders) {
        kinds.push_back({Piece::elliptic, o});
      }
      for (int k : corner_orders) {
        kinds.push_back({Piece::corner, k});
      }
      kinds.push_back({Piece::free, 0});
      std::vector<TypeVParams> out;
      std::vector<Piece>       cur;
      std::function<void(std::size_t)> rec = [&](std::size_t from) {
        if (!cur.empty()) {
          out.push_back(to_params(cur));
        }
        for (std::size_t i = from; i < kinds.size(); ++i) {
          cur.push_back(kinds[i]);
          if (type_v_step(cur) >= budget) {
            rec(i);
          }
          cur.pop_back();
        }
      };
      rec(0);
      return out;
    }

    inline std::vector<int> element_orders(FiniteGroup const& G) {
      std::set<int> s;
      for (std::uint32_t x = 1; x < G.order(); ++x) {
        s.insert(G.order_of(x));
      }
      return {s.begin(), s.end()};
    }

  }  // namespace detail

  // Structures with chi(K) = (1 - g) / n, reflections and imaginary
  // reflections identified (they give the same counts), likewise the two
  // kinds of TypeV involutions.
  inline std::vector<std::vector<FactorSpec>> structures_with_rank(
      long long g, long long n, std::vector<int> const& orders,
      std::vector<int> const& corner_orders) {
    Rational target = Rational(1 - g, n) - Rational(1);
    auto     tv     = detail::type_v_candidates(target, orders, corner_orders);
    std::vector<Rational> tv_step;
    for (auto const& v : tv) {
      std::vector<detail::Piece> ps;
      for (int k = 0; k < v.commuting_involutions; ++k) {
        ps.push_back({detail::Piece::involution, 0});
      }
      for (int o : v.elliptic_orders) {
        ps.push_back({detail::Piece::elliptic, o});
      }
      for (int k : v.corners) {
        ps.push_back({detail::Piece::corner, k});
      }
      for (int k = 0; k < v.schottky_rank; ++k) {
        ps.push_back({detail::Piece::free, 0});
      }
      tv_step.push_back(detail::type_v_step(ps));
    }

    std::vector<std::vector<FactorSpec>> out;
    std::vector<FactorSpec>              cur;
    // Atoms in a fixed order: reflection, loxodromic, glide, TypeV[i].
    std::size_t const n_atoms = 3 + tv.size();
    auto step = [&](std::size_t a) -> Rational {
      return a == 0 ? Rational(-1, 2) : a < 3 ? Rational(-1) : tv_step[a - 3];
    };
    auto make = [&](std::size_t a) {
      switch (a) {
        case 0:
          return FactorSpec::reflection();
        case 1:
          return FactorSpec::loxodromic();
        case 2:
          return FactorSpec::glide_reflection();
        default:
          return FactorSpec::type_v(tv[a - 3]);
      }
    };
    std::function<void(std::size_t, Rational)> rec = [&](std::size_t from,
                                                         Rational    left) {
      if (left.numerator() == 0) {
        bool reversing = false;
        for (auto const& f : cur) {
          reversing = reversing || f.kind != FactorKind::loxodromic;
        }
        if (reversing) {
          out.push_back(cur);
        }
        return;
      }
      if (left > Rational(-1, 2)) {
        return;
      }
      for (std::size_t a = from; a < n_atoms; ++a) {
        Rational s = step(a);
        if (s < left) {
          continue;
        }
        cur.push_back(make(a));
        rec(a, left - s);
        cur.pop_back();
      }
    };
    rec(0, target);
    return out;
  }

  struct SymmetryTriple {
    std::vector<FactorSpec> const*      factors = nullptr;
    std::string const*                  group   = nullptr;
    Epimorphism const*                  epimorphism = nullptr;
    std::array<std::uint32_t, 3>        taus{};
    std::array<long long, 3>            m{};
  };

  struct EnumerationStats {
    std::vector<std::string> groups;
    std::size_t              structures   = 0;
    std::size_t              epimorphisms = 0;
  };

  // Calls visit for every epimorphism (one per conjugacy orbit of the first
  // generator's image) from a structure of kernel rank g onto a catalog
  // group, and every triple of distinct symmetries generating the group.
  // visit returns false to stop.
  inline EnumerationStats for_each_symmetry_triple(
      long long g,
      std::function<bool(SymmetryTriple const&)> const& visit,
      double max_search_space = 1e7) {
    if (g < 2 || g > 4) {
      throw PreconditionViolation("triple enumeration is bounded to genus 2..4");
    }
    EnumerationStats st;
    bool             stop = false;
    for (auto const& [name, G] : detail::three_involution_catalog(g)) {
      st.groups.push_back(name);
      std::vector<int> ell, cor;
      for (int o : detail::element_orders(*G)) {
        ell.push_back(o);
        if (4 * o <= int(G->order())) {
          cor.push_back(o);
        }
      }
      SearchOptions so;
      so.orientation      = OrientationConstraint::kernel_preserving;
      so.up_to_conjugacy  = true;
      so.max_search_space = max_search_space;
      for (auto const& factors :
           structures_with_rank(g, G->order(), ell, cor)) {
        ++st.structures;
        StructuralGroup s(factors);
        auto            syms = complete_symmetry_set(s);
        for_each_epimorphism(
            s, G, so, [&](std::vector<std::uint32_t> const& img) {
              ++st.epimorphisms;
              Epimorphism e(s, G, img);
              auto        o = kernel_orientation_check(e);
              std::vector<std::uint32_t> taus;
              std::vector<long long>     m(G->order(), -1);
              for (std::uint32_t x = 0; x < G->order(); ++x) {
                if (G->order_of(x) == 2 && o.parity[x] == 1) {
                  taus.push_back(x);
                  auto rep = G->class_representative(x);
                  if (m[rep] < 0) {
                    m[rep] = detail::profile_unchecked(e, syms, rep).m();
                  }
                  m[x] = m[rep];
                }
              }
              SymmetryTriple t{&factors, &name, &e, {}, {}};
              for (std::size_t i = 0; i < taus.size(); ++i) {
                for (std::size_t j = i + 1; j < taus.size(); ++j) {
                  for (std::size_t k = j + 1; k < taus.size(); ++k) {
                    if (!G->generates({taus[i], taus[j], taus[k]})) {
                      continue;
                    }
                    t.taus = {taus[i], taus[j], taus[k]};
                    t.m    = {m[taus[i]], m[taus[j]], m[taus[k]]};
                    if (!visit(t)) {
                      stop = true;
                      return false;
                    }
                  }
                }
              }
              return true;
            });
        if (stop) {
          return st;
        }
      }
    }
    return st;
  }

  // Witnesses for a handlebody of genus g with three symmetries generating
  // the catalog group and with the target component counts (any order).
  inline ImpossibilitySearchResult exhaustive_impossibility_search(
      long long g, std::array<long long, 3> target,
      ImpossibilitySearchOptions const& opt = {}) {
    ImpossibilitySearchResult res;
    res.g      = g;
    res.target = target;
    std::sort(target.begin(), target.end());
    auto st = for_each_symmetry_triple(
        g,
        [&](SymmetryTriple const& t) {
          auto ms = t.m;
          std::sort(ms.begin(), ms.end());
          if (ms != target) {
            return true;
          }
          res.witnesses.push_back({*t.factors, *t.group,
                                   t.epimorphism->images(), t.taus, t.m});
          return res.witnesses.size() < opt.max_witnesses;
        },
        opt.max_search_space);
    res.groups       = st.groups;
    res.structures   = st.structures;
    res.epimorphisms = st.epimorphisms;
    return res;
  }

}  // namespace schottky

#endif  // SCHOTTKY_SEARCH_HPP_
