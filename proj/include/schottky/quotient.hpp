#ifndef SCHOTTKY_QUOTIENT_HPP_
#define SCHOTTKY_QUOTIENT_HPP_

#include <algorithm>
#include <array>
#include <bitset>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "errors.hpp"
#include "finite_groups.hpp"
#include "structure.hpp"
#include "word.hpp"

namespace schottky {

  // A homomorphism from a structural group to a finite group, given by the
  // images of the presentation generators.  Nothing is checked on
  // construction beyond sizes; use validate().
  class Epimorphism {
   public:
    Epimorphism(StructuralGroup                    source,
                std::shared_ptr<FiniteGroup const> target,
                std::vector<std::uint32_t>         images)
        : _source(std::move(source)),
          _target(std::move(target)),
          _images(std::move(images)) {
      if (_images.size() != _source.generator_count()) {
        throw std::invalid_argument("one image per generator required");
      }
      for (auto i : _images) {
        if (i >= _target->order()) {
          throw std::out_of_range("image index out of range");
        }
      }
    }

    Epimorphism(StructuralGroup                            source,
                std::shared_ptr<FiniteGroup const>         target,
                std::map<std::string, GroupElement> const& images)
        : _source(std::move(source)), _target(std::move(target)) {
      auto const& p = _source.presentation();
      for (auto const& g : p.generators) {
        auto it = images.find(g.name);
        if (it == images.end()) {
          throw std::invalid_argument("no image for generator " + g.name);
        }
        _target->check(it->second);
        _images.push_back(it->second.index);
      }
      if (images.size() != p.generators.size()) {
        throw std::invalid_argument("images given for unknown generators");
      }
    }

    StructuralGroup const& source() const noexcept {
      return _source;
    }
    FiniteGroup const& target() const noexcept {
      return *_target;
    }
    std::shared_ptr<FiniteGroup const> const& target_ptr() const noexcept {
      return _target;
    }
    std::vector<std::uint32_t> const& images() const noexcept {
      return _images;
    }
    std::uint32_t image(std::size_t gen) const {
      return _images.at(gen);
    }
    GroupElement image(std::string const& name) const {
      return _target->element(
          _images.at(_source.presentation().index_of(name)));
    }

    std::uint32_t evaluate(Word const& w) const {
      std::uint32_t r = 0;
      for (auto const& s : w.syllables()) {
        std::uint32_t x = _target->pow(_images.at(s.gen), s.exp);
        r               = _target->mul(r, x);
      }
      return r;
    }

   private:
    StructuralGroup                    _source;
    std::shared_ptr<FiniteGroup const> _target;
    std::vector<std::uint32_t>         _images;
  };

  struct ValidationResult {
    bool                     surjective = false;
    std::vector<std::string> violations;

    bool ok() const noexcept {
      return violations.empty() && surjective;
    }
  };

  inline ValidationResult validate(Epimorphism const& e) {
    ValidationResult r;
    auto const&      p     = e.source().presentation();
    auto const       names = p.names();
    for (auto const& rel : p.relators) {
      std::uint32_t v = e.evaluate(rel);
      if (v != 0) {
        r.violations.push_back("relator " + rel.to_string(names) + " maps to "
                               + e.target().name_of(v));
      }
    }
    r.surjective = e.target().generates(e.images());
    if (!r.surjective) {
      r.violations.push_back("images do not generate the target");
    }
    return r;
  }

  struct TorsionCheck {
    bool                torsion_free = true;
    std::optional<Word> witness;
  };

  namespace detail {

    // Elements sigma^a w^b for the finite subgroup <sigma> x <w-part>,
    // listed as words; used to look for a non-trivial element killed by the
    // map.
    inline std::optional<Word> killed_in(Epimorphism const&       e,
                                         std::vector<Word> const& words) {
      for (auto const& w : words) {
        if (!w.empty() && e.evaluate(w) == 0) {
          return w;
        }
      }
      return std::nullopt;
    }

    inline std::vector<Word> finite_subgroup_words(FactorLayout const& lay,
                                                   TypeVParams const&  v) {
      std::vector<Word> out;
      Word              s = Word::generator(lay.sigma);
      out.push_back(s);
      for (std::size_t k = 0; k < lay.elliptics.size(); ++k) {
        Word t = Word::generator(lay.elliptics[k]);
        for (int b = 1; b < v.elliptic_orders[k]; ++b) {
          out.push_back(t.pow(b));
          out.push_back(s * t.pow(b));
        }
      }
      for (auto i : lay.involutions) {
        out.push_back(Word::generator(i));
        out.push_back(s * Word::generator(i));
      }
      for (std::size_t k = 0; k < lay.corners.size(); ++k) {
        Word a  = Word::generator(lay.corners[k].first);
        Word b  = Word::generator(lay.corners[k].second);
        Word ab = a * b;
        for (int j = 0; j < v.corners[k]; ++j) {
          for (int refl = 0; refl < 2; ++refl) {
            Word w = ab.pow(j) * (refl ? a : Word());
            out.push_back(w);
            out.push_back(s * w);
          }
        }
      }
      return out;
    }

  }  // namespace detail

  // A torsion-free kernel meets no finite subgroup of any factor.
  inline TorsionCheck kernel_torsion_free(Epimorphism const& e) {
    auto const& s = e.source();
    auto const& p = s.presentation();
    for (std::size_t fi = 0; fi < s.factors().size(); ++fi) {
      auto const& f   = s.factors()[fi];
      auto const& lay = s.layout()[fi];
      if (f.kind == FactorKind::reflection
          || f.kind == FactorKind::imaginary_reflection) {
        if (e.image(lay.first) == 0) {
          return {false, Word::generator(lay.first)};
        }
      } else if (f.kind == FactorKind::type_v) {
        if (auto w = detail::killed_in(e,
                                       detail::finite_subgroup_words(lay, f.v))) {
          return {false, *w};
        }
      }
    }
    (void) p;
    return {};
  }

  struct OrientationCheck {
    // True iff every kernel element preserves orientation.
    bool                      consistent = true;
    std::optional<Word>       witness;  // an orientation-reversing kernel word
    std::vector<std::uint8_t> parity;   // per target element, if consistent
  };

  namespace detail {
    // Breadth-first spanning tree of the Cayley graph on the generator
    // images, with letters (j, +1), (j, -1) tried in generator order; the
    // inverse letter is skipped for involutive generators.
    struct CayleyTree {
      std::vector<std::int64_t>  parent;  // -1 for the root
      std::vector<std::uint32_t> gen;
      std::vector<int>           sign;
      std::vector<std::uint32_t> bfs_order;

      Word rep(std::uint32_t c) const {
        std::vector<Syllable> rev;
        while (parent[c] >= 0) {
          rev.push_back({gen[c], sign[c]});
          c = static_cast<std::uint32_t>(parent[c]);
        }
        std::reverse(rev.begin(), rev.end());
        Word w;
        for (auto const& s : rev) {
          w *= Word::generator(s.gen, s.exp);
        }
        return w;
      }
    };

    inline CayleyTree cayley_tree(Epimorphism const& e) {
      auto const& G = e.target();
      auto const& p = e.source().presentation();
      std::size_t n = G.order();
      CayleyTree  t;
      t.parent.assign(n, -2);
      t.gen.assign(n, 0);
      t.sign.assign(n, 0);
      t.parent[0] = -1;
      t.bfs_order.push_back(0);
      for (std::size_t i = 0; i < t.bfs_order.size(); ++i) {
        std::uint32_t c = t.bfs_order[i];
        for (std::uint32_t j = 0; j < p.generators.size(); ++j) {
          for (int sgn : {1, -1}) {
            if (sgn < 0 && p.generators[j].order == 2) {
              continue;
            }
            std::uint32_t x = sgn > 0 ? e.image(j) : G.inv(e.image(j));
            std::uint32_t d = G.mul(c, x);
            if (t.parent[d] == -2) {
              t.parent[d] = c;
              t.gen[d]    = j;
              t.sign[d]   = sgn;
              t.bfs_order.push_back(d);
            }
          }
        }
      }
      return t;
    }
  }  // namespace detail

  // Does the orientation character of the source factor through the map?
  // Requires a surjective map.
  inline OrientationCheck kernel_orientation_check(Epimorphism const& e) {
    auto const&      G = e.target();
    auto const&      p = e.source().presentation();
    auto             t = detail::cayley_tree(e);
    OrientationCheck r;
    r.parity.assign(G.order(), 0);
    for (auto c : t.bfs_order) {
      if (t.parent[c] >= 0) {
        bool rev    = p.generators[t.gen[c]].orientation
                   == Orientation::reversing;
        r.parity[c] = r.parity[t.parent[c]] ^ rev;
      }
    }
    for (auto c : t.bfs_order) {
      for (std::uint32_t j = 0; j < p.generators.size(); ++j) {
        bool          rev = p.generators[j].orientation == Orientation::reversing;
        std::uint32_t d   = G.mul(c, e.image(j));
        if (r.parity[d] != (r.parity[c] ^ rev)) {
          r.consistent = false;
          r.witness    = t.rep(c) * Word::generator(j) * t.rep(d).inverse();
          r.witness    = r.witness->reduced(p.orders());
          r.parity.clear();
          return r;
        }
      }
    }
    return r;
  }

  // Image of the orientation-preserving half: the parity-0 elements.
  inline std::vector<std::uint32_t> rotation_image(OrientationCheck const& o) {
    std::vector<std::uint32_t> r;
    for (std::uint32_t i = 0; i < o.parity.size(); ++i) {
      if (o.parity[i] == 0) {
        r.push_back(i);
      }
    }
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // Kernel rank, two ways
  ////////////////////////////////////////////////////////////////////////

  inline Rational euler_characteristic(FactorSpec const& f) {
    switch (f.kind) {
      case FactorKind::reflection:
      case FactorKind::imaginary_reflection:
        return Rational(1, 2);
      case FactorKind::loxodromic:
      case FactorKind::glide_reflection:
        return Rational(0);
      case FactorKind::type_v: {
        auto const& v = f.v;
        Rational    w(0);
        for (int o : v.elliptic_orders) {
          w += Rational(1, o);
        }
        w += Rational(v.commuting_involutions, 2);
        for (int k : v.corners) {
          w += Rational(1, 2 * k);
        }
        w -= Rational(static_cast<long long>(v.w_factor_count()) - 1);
        return w / 2;
      }
    }
    return Rational(0);
  }

  inline Rational euler_characteristic(StructuralGroup const& s) {
    Rational chi(0);
    for (auto const& f : s.factors()) {
      chi += euler_characteristic(f);
    }
    return chi - Rational(static_cast<long long>(s.factors().size()) - 1);
  }

  // 1 - |G| chi; an exception if not an integer.
  inline long long euler_rank(Epimorphism const& e) {
    Rational r = Rational(1)
                 - Rational(static_cast<long long>(e.target().order()))
                       * euler_characteristic(e.source());
    if (r.denominator() != 1) {
      throw OracleMismatch("non-integral Euler rank");
    }
    return r.numerator();
  }

  struct SchreierResult {
    std::size_t       rank = 0;
    std::size_t       schreier_generators = 0;  // before elimination
    std::size_t       relators            = 0;  // before elimination
    std::vector<Word> kernel_generators;        // free basis, if requested
  };

  namespace detail {

    using FreeWord = std::vector<int>;  // letters +-(id + 1)

    inline void free_reduce(FreeWord& w) {
      FreeWord out;
      out.reserve(w.size());
      for (int x : w) {
        if (!out.empty() && out.back() == -x) {
          out.pop_back();
        } else {
          out.push_back(x);
        }
      }
      w.swap(out);
    }

    inline void cyclic_reduce(FreeWord& w) {
      free_reduce(w);
      std::size_t i = 0, j = w.size();
      while (j - i >= 2 && w[i] == -w[j - 1]) {
        ++i;
        --j;
      }
      w = FreeWord(w.begin() + i, w.begin() + j);
    }

    inline FreeWord free_inverse(FreeWord const& w) {
      FreeWord r(w.rbegin(), w.rend());
      for (int& x : r) {
        x = -x;
      }
      return r;
    }

    // Tietze elimination: repeatedly solve the shortest relator containing
    // some generator exactly once.  Returns the surviving generators, or
    // nullopt if relators remain that cannot be used.
    inline std::optional<std::vector<int>> eliminate(
        std::size_t            ngens,
        std::vector<FreeWord>& rels,
        std::vector<bool>&     alive,
        std::vector<std::optional<FreeWord>>* subst) {
      std::vector<int> occ(ngens + 1, 0);
      while (true) {
        // Clean up.
        std::vector<FreeWord> keep;
        keep.reserve(rels.size());
        for (auto& r : rels) {
          cyclic_reduce(r);
          if (!r.empty()) {
            keep.push_back(std::move(r));
          }
        }
        rels.swap(keep);
        if (rels.empty()) {
          break;
        }
        std::size_t best     = rels.size();
        int         best_gen = 0;
        for (std::size_t i = 0; i < rels.size(); ++i) {
          auto const& r = rels[i];
          if (best < rels.size() && r.size() >= rels[best].size()) {
            continue;
          }
          for (int x : r) {
            occ[std::abs(x)] = 0;
          }
          for (int x : r) {
            ++occ[std::abs(x)];
          }
          for (int x : r) {
            if (occ[std::abs(x)] == 1) {
              best     = i;
              best_gen = std::abs(x);
              break;
            }
          }
        }
        if (best == rels.size()) {
          return std::nullopt;
        }
        // Rotate so the generator comes first: x^e w = 1.
        FreeWord r = rels[best];
        auto     pos
            = std::find_if(r.begin(), r.end(),
                           [&](int x) { return std::abs(x) == best_gen; });
        std::rotate(r.begin(), pos, r.end());
        int      e = r[0] > 0 ? 1 : -1;
        FreeWord w(r.begin() + 1, r.end());
        // x = w^-1 if e = 1, x = w if e = -1.
        FreeWord val = e > 0 ? free_inverse(w) : w;
        FreeWord inv = free_inverse(val);
        rels.erase(rels.begin() + best);
        alive[best_gen - 1] = false;
        auto substitute = [&](FreeWord& t) {
          bool has = false;
          for (int y : t) {
            has = has || std::abs(y) == best_gen;
          }
          if (!has) {
            return;
          }
          FreeWord out;
          for (int y : t) {
            if (y == best_gen) {
              out.insert(out.end(), val.begin(), val.end());
            } else if (y == -best_gen) {
              out.insert(out.end(), inv.begin(), inv.end());
            } else {
              out.push_back(y);
            }
          }
          free_reduce(out);
          t.swap(out);
        };
        for (auto& t : rels) {
          substitute(t);
        }
        if (subst != nullptr) {
          (*subst)[best_gen - 1] = val;
          for (auto& s : *subst) {
            if (s) {
              substitute(*s);
            }
          }
        }
      }
      std::vector<int> survivors;
      for (std::size_t i = 0; i < ngens; ++i) {
        if (alive[i]) {
          survivors.push_back(static_cast<int>(i));
        }
      }
      return survivors;
    }

  }  // namespace detail

  // Reidemeister-Schreier with the Cayley table as coset table, followed by
  // Tietze elimination down to a free basis.
  inline SchreierResult reidemeister_schreier(Epimorphism const& e,
                                              bool want_generators = false) {
    auto const& G  = e.target();
    auto const& p  = e.source().presentation();
    std::size_t n  = G.order();
    std::size_t k  = p.generators.size();
    auto        tr = detail::cayley_tree(e);
    for (std::size_t c = 0; c < n; ++c) {
      if (tr.parent[c] == -2) {
        throw PreconditionViolation("Reidemeister-Schreier needs a surjection");
      }
    }
    // gamma(c, j) = rep(c) j rep(c j)^-1, trivial on tree edges.
    std::vector<int> sid(n * k, 0);
    std::size_t      ngens = 0;
    for (std::uint32_t c = 0; c < n; ++c) {
      for (std::uint32_t j = 0; j < k; ++j) {
        std::uint32_t d    = G.mul(c, e.image(j));
        bool          tree = (tr.parent[d] == c && tr.gen[d] == j
                     && tr.sign[d] == 1)
                    || (tr.parent[c] == d && tr.gen[c] == j
                        && tr.sign[c] == -1);
        if (!tree) {
          sid[c * k + j] = static_cast<int>(++ngens);
        }
      }
    }
    SchreierResult res;
    res.schreier_generators = ngens;
    std::vector<detail::FreeWord> rels;
    for (auto const& rel : p.relators) {
      for (std::uint32_t c0 = 0; c0 < n; ++c0) {
        detail::FreeWord w;
        std::uint32_t    c = c0;
        for (auto const& s : rel.syllables()) {
          std::uint32_t x = e.image(s.gen);
          for (int i = 0; i < std::abs(s.exp); ++i) {
            if (s.exp > 0) {
              if (int g = sid[c * k + s.gen]) {
                w.push_back(g);
              }
              c = G.mul(c, x);
            } else {
              c = G.mul(c, G.inv(x));
              if (int g = sid[c * k + s.gen]) {
                w.push_back(-g);
              }
            }
          }
        }
        if (c != c0) {
          throw PreconditionViolation("relator does not map to the identity");
        }
        rels.push_back(std::move(w));
      }
    }
    res.relators = rels.size();
    std::vector<bool>                            alive(ngens, true);
    std::vector<std::optional<detail::FreeWord>> subst(ngens);
    auto survivors = detail::eliminate(ngens, rels, alive,
                                       want_generators ? &subst : nullptr);
    if (!survivors) {
      throw OracleMismatch("Reidemeister-Schreier elimination stalled with "
                           + std::to_string(rels.size()) + " relators");
    }
    res.rank = survivors->size();
    if (want_generators) {
      std::vector<std::pair<std::uint32_t, std::uint32_t>> of_id(ngens + 1);
      for (std::uint32_t c = 0; c < n; ++c) {
        for (std::uint32_t j = 0; j < k; ++j) {
          if (int g = sid[c * k + j]) {
            of_id[g] = {c, j};
          }
        }
      }
      auto orders = p.orders();
      for (int g : *survivors) {
        auto [c, j] = of_id[g + 1];
        Word w      = tr.rep(c) * Word::generator(j)
                 * tr.rep(G.mul(c, e.image(j))).inverse();
        res.kernel_generators.push_back(w.reduced(orders));
      }
    }
    return res;
  }

  struct KernelReport {
    bool              torsion_free = true;
    long long         rank         = 0;
    long long         euler_rank   = 0;
    long long         rs_rank      = 0;
    std::optional<Word> witness;
    std::vector<Word> schreier_generators;
  };

  inline KernelReport kernel_rank(Epimorphism const& e,
                                  bool want_generators = false) {
    auto v = validate(e);
    if (!v.ok()) {
      throw InvalidEpimorphism(v.violations.front());
    }
    auto t = kernel_torsion_free(e);
    if (!t.torsion_free) {
      throw TorsionInKernel(
          "finite-order element in the kernel: "
          + t.witness->to_string(e.source().presentation().names()));
    }
    KernelReport r;
    r.euler_rank = euler_rank(e);
    auto rs      = reidemeister_schreier(e, want_generators);
    r.rs_rank    = static_cast<long long>(rs.rank);
    if (r.rs_rank != r.euler_rank) {
      throw OracleMismatch("Euler rank " + std::to_string(r.euler_rank)
                           + " differs from Reidemeister-Schreier rank "
                           + std::to_string(r.rs_rank));
    }
    r.rank                = r.euler_rank;
    r.schreier_generators = std::move(rs.kernel_generators);
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // Searching for epimorphisms
  ////////////////////////////////////////////////////////////////////////

  enum class OrientationConstraint {
    none,
    // the kernel consists of orientation-preserving elements
    kernel_preserving,
    // additionally the image of the orientation-preserving half is cyclic
    cyclic_rotation
  };

  struct SearchOptions {
    OrientationConstraint orientation = OrientationConstraint::none;
    // Keep one representative per orbit of Aut(target).
    bool        up_to_automorphism = false;
    // Restrict the first generator to conjugacy-class representatives.
    // Every epimorphism is then conjugate to a reported one.
    bool        up_to_conjugacy = false;
    std::size_t max_results     = std::numeric_limits<std::size_t>::max();
    double      max_search_space = 1e7;
  };

  namespace detail {

    // Candidate count estimate used for the search-space guard.
    inline double search_space(StructuralGroup const& s, FiniteGroup const& G) {
      auto const&      p = s.presentation();
      std::vector<int> by_order(G.order() + 1, 0);
      for (std::uint32_t i = 0; i < G.order(); ++i) {
        ++by_order[G.order_of(i)];
      }
      auto count_order = [&](int o) -> double {
        if (o == 0) {
          return double(G.order());
        }
        return o <= int(G.order()) ? by_order[o] : 0;
      };
      // Largest number of elements of each order commuting with a fixed
      // involution.
      std::map<int, double> comm;
      auto                  comm_count = [&](int o) {
        if (comm.count(o)) {
          return comm[o];
        }
        double best = 0;
        for (auto x : G.involutions()) {
          double c = 0;
          for (auto y : G.centralizer_of(x)) {
            c += (o == 0 || G.order_of(y) == o);
          }
          best = std::max(best, c);
        }
        return comm[o] = best;
      };
      double total = 1;
      for (auto const& g : p.generators) {
        bool in_v = s.factors()[g.factor].kind == FactorKind::type_v
                    && g.role != GenRole::sigma;
        total *= in_v ? comm_count(g.order) : count_order(g.order);
      }
      return total;
    }

    inline bool orientation_ok(Epimorphism const&    e,
                               OrientationConstraint c) {
      if (c == OrientationConstraint::none) {
        return true;
      }
      auto o = kernel_orientation_check(e);
      if (!o.consistent) {
        return false;
      }
      if (c == OrientationConstraint::kernel_preserving) {
        return true;
      }
      auto rot = rotation_image(o);
      if (2 * rot.size() != e.target().order()) {
        return false;
      }
      for (auto x : rot) {
        if (static_cast<std::size_t>(e.target().order_of(x)) == rot.size()) {
          return true;
        }
      }
      return false;
    }

    // All homomorphisms G -> Z2 (trivial one included), as 0/1 vectors.
    inline std::vector<std::vector<std::uint8_t>> sign_characters(
        FiniteGroup const& G) {
      std::vector<std::uint32_t> gens;
      std::vector<std::uint32_t> span{0};
      for (std::uint32_t x = 1; x < G.order() && span.size() < G.order(); ++x) {
        if (!std::binary_search(span.begin(), span.end(), x)) {
          gens.push_back(x);
          span = G.closure(gens);
        }
      }
      std::vector<std::vector<std::uint8_t>> out;
      std::size_t const                      n = G.order();
      for (std::uint32_t mask = 0; mask < (1u << gens.size()); ++mask) {
        std::vector<int>           v(n, -1);
        std::vector<std::uint32_t> queue{0};
        v[0]    = 0;
        bool ok = true;
        for (std::size_t i = 0; i < queue.size() && ok; ++i) {
          auto c = queue[i];
          for (std::size_t j = 0; j < gens.size() && ok; ++j) {
            auto d = G.mul(c, gens[j]);
            int  w = v[c] ^ int((mask >> j) & 1);
            if (v[d] < 0) {
              v[d] = w;
              queue.push_back(d);
            } else {
              ok = v[d] == w;
            }
          }
        }
        if (ok) {
          out.emplace_back(v.begin(), v.end());
        }
      }
      return out;
    }

    // All automorphisms of G as permutations of element indices.
    inline std::vector<std::vector<std::uint32_t>> automorphisms(
        FiniteGroup const& G) {
      // Greedy generating set.
      std::vector<std::uint32_t> gens;
      std::vector<std::uint32_t> span{0};
      for (std::uint32_t x = 1; x < G.order() && span.size() < G.order(); ++x) {
        if (!std::binary_search(span.begin(), span.end(), x)) {
          gens.push_back(x);
          span = G.closure(gens);
        }
      }
      // Spanning tree words over gens.
      std::size_t                n = G.order();
      std::vector<std::int64_t>  par(n, -2);
      std::vector<std::uint32_t> via(n, 0);
      std::vector<std::uint32_t> order{0};
      par[0] = -1;
      for (std::size_t i = 0; i < order.size(); ++i) {
        for (std::uint32_t j = 0; j < gens.size(); ++j) {
          std::uint32_t d = G.mul(order[i], gens[j]);
          if (par[d] == -2) {
            par[d] = order[i];
            via[d] = j;
            order.push_back(d);
          }
        }
      }
      std::vector<std::vector<std::uint32_t>> out;
      std::vector<std::uint32_t>              img(gens.size());
      std::function<void(std::size_t)>        rec = [&](std::size_t j) {
        if (j == gens.size()) {
          std::vector<std::uint32_t> phi(n);
          std::vector<bool>          hit(n, false);
          phi[0] = 0;
          for (std::size_t i = 1; i < order.size(); ++i) {
            auto c = order[i];
            phi[c] = G.mul(phi[par[c]], img[via[c]]);
          }
          for (auto v : phi) {
            if (hit[v]) {
              return;
            }
            hit[v] = true;
          }
          for (std::uint32_t a = 0; a < n; ++a) {
            for (auto g : gens) {
              if (phi[G.mul(a, g)] != G.mul(phi[a], phi[g])) {
                return;
              }
            }
          }
          out.push_back(std::move(phi));
          return;
        }
        for (std::uint32_t y = 1; y < n; ++y) {
          if (G.order_of(y) == G.order_of(gens[j])) {
            img[j] = y;
            rec(j + 1);
          }
        }
      };
      rec(0);
      return out;
    }

  }  // namespace detail

  // Calls visit(images) for every assignment passing validate and
  // kernel_torsion_free and the orientation constraint, in lexicographic
  // order of images.  visit returns false to stop.
  inline void for_each_epimorphism(
      StructuralGroup const&                                   s,
      std::shared_ptr<FiniteGroup const> const&                Gp,
      SearchOptions const&                                     opt,
      std::function<bool(std::vector<std::uint32_t> const&)> const& visit) {
    FiniteGroup const& G  = *Gp;
    auto const&        p  = s.presentation();
    std::size_t const  k  = p.generators.size();
    double             sp = detail::search_space(s, G);
    if (sp > opt.max_search_space) {
      throw SearchSpaceTooLarge("epimorphism search space too large", sp,
                                opt.max_search_space);
    }
    std::vector<std::vector<std::uint32_t>> by_order(G.order() + 1);
    for (std::uint32_t i = 0; i < G.order(); ++i) {
      by_order[G.order_of(i)].push_back(i);
    }
    std::vector<std::uint32_t> all(G.order());
    std::iota(all.begin(), all.end(), 0);

    std::vector<std::uint32_t> img(k, 0);
    bool                       stop = false;

    // Orientation pruning: the kernel is orientation-preserving iff some
    // character G -> Z2 takes every generator image to its orientation.
    using Chars = std::bitset<256>;
    bool const         prune = opt.orientation != OrientationConstraint::none;
    std::array<std::vector<Chars>, 2> allowed;
    std::vector<Chars> mask(k + 1);
    if (prune) {
      auto chars = detail::sign_characters(G);
      if (chars.size() > 256) {
        throw std::logic_error("too many sign characters");
      }
      allowed[0].assign(G.order(), Chars());
      allowed[1].assign(G.order(), Chars());
      for (std::size_t c = 0; c < chars.size(); ++c) {
        mask[0].set(c);
        for (std::uint32_t x = 0; x < G.order(); ++x) {
          allowed[chars[c][x]][x].set(c);
        }
      }
    }

    std::function<void(std::size_t)> rec = [&](std::size_t j) {
      if (stop) {
        return;
      }
      if (j == k) {
        if (!G.generates(img)) {
          return;
        }
        if (opt.orientation == OrientationConstraint::cyclic_rotation
            && !detail::orientation_ok(Epimorphism(s, Gp, img),
                                       opt.orientation)) {
          return;
        }
        if (!visit(img)) {
          stop = true;
        }
        return;
      }
      auto const&                       g = p.generators[j];
      std::vector<std::uint32_t> const* cand
          = g.order == 0 ? &all
                         : (g.order <= int(G.order()) ? &by_order[g.order]
                                                      : nullptr);
      if (cand == nullptr) {
        return;
      }
      auto const& lay   = s.layout()[g.factor];
      bool        in_v  = s.factors()[g.factor].kind == FactorKind::type_v;
      std::vector<std::uint32_t> reps;
      if (j == 0 && opt.up_to_conjugacy) {
        for (auto x : *cand) {
          if (G.class_representative(x) == x) {
            reps.push_back(x);
          }
        }
        cand = &reps;
      }
      for (auto x : *cand) {
        if (in_v && g.role != GenRole::sigma) {
          std::uint32_t sg = img[lay.sigma];
          if (!G.commute(x, sg)) {
            continue;
          }
          switch (g.role) {
            case GenRole::elliptic: {
              auto cl = G.closure({x});
              if (std::binary_search(cl.begin(), cl.end(), sg)) {
                continue;
              }
              break;
            }
            case GenRole::involution:
            case GenRole::imaginary_involution:
              if (x == sg) {
                continue;
              }
              break;
            case GenRole::corner_b: {
              auto const& corner = lay.corners[g.slot];
              std::uint32_t a    = img[corner.first];
              int           kk   = s.factors()[g.factor].v.corners[g.slot];
              if (G.order_of(G.mul(a, x)) != kk) {
                continue;
              }
              auto cl = G.closure({a, x});
              if (std::binary_search(cl.begin(), cl.end(), sg)) {
                continue;
              }
              break;
            }
            default:
              break;
          }
        }
        if (prune) {
          int rev      = g.orientation == Orientation::reversing;
          mask[j + 1]  = mask[j] & allowed[rev][x];
          if (mask[j + 1].none()) {
            continue;
          }
        }
        img[j] = x;
        rec(j + 1);
        if (stop) {
          return;
        }
      }
    };
    rec(0);
  }

  inline std::vector<Epimorphism> find_epimorphisms(
      StructuralGroup const&                    s,
      std::shared_ptr<FiniteGroup const> const& G,
      SearchOptions const&                      opt = {}) {
    std::vector<Epimorphism>                 out;
    std::vector<std::vector<std::uint32_t>> autos;
    if (opt.up_to_automorphism) {
      autos = detail::automorphisms(*G);
    }
    for_each_epimorphism(s, G, opt, [&](std::vector<std::uint32_t> const& img) {
      if (opt.up_to_automorphism) {
        for (auto const& phi : autos) {
          std::vector<std::uint32_t> t(img.size());
          for (std::size_t i = 0; i < img.size(); ++i) {
            t[i] = phi[img[i]];
          }
          if (t < img) {
            return true;
          }
        }
      }
      out.emplace_back(s, G, img);
      return out.size() < opt.max_results;
    });
    return out;
  }

}  // namespace schottky

#endif  // SCHOTTKY_QUOTIENT_HPP_
