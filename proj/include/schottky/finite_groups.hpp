#ifndef SCHOTTKY_FINITE_GROUPS_HPP_
#define SCHOTTKY_FINITE_GROUPS_HPP_

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace schottky {

  class FiniteGroup;

  struct GroupElement {
    std::uint64_t group_id = 0;
    std::uint32_t index    = 0;

    bool operator==(GroupElement const&) const = default;
  };

  // A subset of a group's elements, stored as a sorted index list.
  struct Subgroup {
    std::uint64_t              group_id = 0;
    std::vector<std::uint32_t> elements;

    std::size_t order() const noexcept {
      return elements.size();
    }
    bool contains(std::uint32_t x) const {
      return std::binary_search(elements.begin(), elements.end(), x);
    }
    bool operator==(Subgroup const&) const = default;
  };

  // Group given by its multiplication table; element 0 is the identity.
  class FiniteGroup {
   public:
    static constexpr std::size_t max_order = 256;

    FiniteGroup(std::vector<std::uint32_t>           table,
                std::size_t                          order,
                std::vector<std::string>             element_names = {},
                std::map<std::string, std::uint32_t> distinguished = {},
                std::string                          description   = "")
        : _id(next_id()),
          _n(order),
          _table(std::move(table)),
          _names(std::move(element_names)),
          _distinguished(std::move(distinguished)),
          _description(std::move(description)) {
      validate();
      _inverse.resize(_n);
      _order_of.resize(_n);
      for (std::uint32_t a = 0; a < _n; ++a) {
        for (std::uint32_t b = 0; b < _n; ++b) {
          if (mul(a, b) == 0) {
            _inverse[a] = b;
            break;
          }
        }
        std::uint32_t x = a;
        int           k = 1;
        while (x != 0) {
          x = mul(x, a);
          ++k;
        }
        _order_of[a] = k;
      }
      if (_names.empty()) {
        for (std::size_t i = 0; i < _n; ++i) {
          _names.push_back(i == 0 ? "1" : "g" + std::to_string(i));
        }
      }
    }

    // Builds the group from generators given as permutations of 0..m-1.
    // The distinguished names refer to generator positions.
    static FiniteGroup from_permutations(
        std::vector<std::vector<std::uint32_t>> const& gens,
        std::vector<std::string> const&                gen_names,
        std::string                                    description);

    std::uint64_t id() const noexcept {
      return _id;
    }
    std::size_t order() const noexcept {
      return _n;
    }
    std::string const& description() const noexcept {
      return _description;
    }
    std::vector<std::string> const& element_names() const noexcept {
      return _names;
    }
    std::map<std::string, std::uint32_t> const& distinguished() const noexcept {
      return _distinguished;
    }

    GroupElement element(std::uint32_t i) const {
      if (i >= _n) {
        throw std::out_of_range("element index out of range");
      }
      return {_id, i};
    }
    GroupElement identity() const noexcept {
      return {_id, 0};
    }
    GroupElement element(std::string const& name) const {
      auto it = _distinguished.find(name);
      if (it == _distinguished.end()) {
        throw std::out_of_range("no distinguished element " + name);
      }
      return {_id, it->second};
    }

    // Raw index arithmetic, used by the inner loops.
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept {
      return _table[a * _n + b];
    }
    std::uint32_t inv(std::uint32_t a) const noexcept {
      return _inverse[a];
    }
    int order_of(std::uint32_t a) const noexcept {
      return _order_of[a];
    }
    std::uint32_t pow(std::uint32_t a, long long k) const noexcept {
      long long o = _order_of[a];
      k           = ((k % o) + o) % o;
      std::uint32_t r = 0;
      for (long long i = 0; i < k; ++i) {
        r = mul(r, a);
      }
      return r;
    }
    bool commute(std::uint32_t a, std::uint32_t b) const noexcept {
      return mul(a, b) == mul(b, a);
    }
    std::uint32_t conj(std::uint32_t h, std::uint32_t x) const noexcept {
      return mul(mul(h, x), _inverse[h]);
    }

    // Checked element arithmetic.
    GroupElement multiply(GroupElement a, GroupElement b) const {
      check(a);
      check(b);
      return {_id, mul(a.index, b.index)};
    }
    GroupElement inverse(GroupElement a) const {
      check(a);
      return {_id, _inverse[a.index]};
    }
    int order_of(GroupElement a) const {
      check(a);
      return _order_of[a.index];
    }

    void check(GroupElement a) const {
      if (a.group_id != _id) {
        throw std::invalid_argument("element belongs to a different group");
      }
      if (a.index >= _n) {
        throw std::out_of_range("element index out of range");
      }
    }
    void check(Subgroup const& h) const {
      if (h.group_id != _id) {
        throw std::invalid_argument("subgroup belongs to a different group");
      }
    }

    bool is_abelian() const noexcept {
      for (std::uint32_t a = 0; a < _n; ++a) {
        for (std::uint32_t b = a + 1; b < _n; ++b) {
          if (!commute(a, b)) {
            return false;
          }
        }
      }
      return true;
    }

    int exponent() const noexcept {
      int e = 1;
      for (auto o : _order_of) {
        e = std::lcm(e, o);
      }
      return e;
    }

    std::vector<std::uint32_t> involutions() const {
      std::vector<std::uint32_t> r;
      for (std::uint32_t a = 0; a < _n; ++a) {
        if (_order_of[a] == 2) {
          r.push_back(a);
        }
      }
      return r;
    }

    std::vector<std::uint32_t> centralizer_of(std::uint32_t x) const {
      std::vector<std::uint32_t> r;
      for (std::uint32_t h = 0; h < _n; ++h) {
        if (commute(h, x)) {
          r.push_back(h);
        }
      }
      return r;
    }

    bool conjugate(std::uint32_t x, std::uint32_t y) const noexcept {
      for (std::uint32_t h = 0; h < _n; ++h) {
        if (conj(h, x) == y) {
          return true;
        }
      }
      return false;
    }

    std::vector<std::uint32_t> conjugacy_class_of(std::uint32_t x) const {
      std::vector<bool> seen(_n, false);
      for (std::uint32_t h = 0; h < _n; ++h) {
        seen[conj(h, x)] = true;
      }
      std::vector<std::uint32_t> r;
      for (std::uint32_t i = 0; i < _n; ++i) {
        if (seen[i]) {
          r.push_back(i);
        }
      }
      return r;
    }

    // Smallest element of the conjugacy class, a canonical class label.
    std::uint32_t class_representative(std::uint32_t x) const {
      std::uint32_t best = x;
      for (std::uint32_t h = 0; h < _n; ++h) {
        best = std::min(best, conj(h, x));
      }
      return best;
    }

    std::vector<std::uint32_t> closure(
        std::vector<std::uint32_t> const& gens) const {
      std::vector<bool>          in(_n, false);
      std::vector<std::uint32_t> elts{0};
      in[0] = true;
      for (std::size_t i = 0; i < elts.size(); ++i) {
        for (auto g : gens) {
          std::uint32_t y = mul(elts[i], g);
          if (!in[y]) {
            in[y] = true;
            elts.push_back(y);
          }
        }
      }
      std::sort(elts.begin(), elts.end());
      return elts;
    }

    bool generates(std::vector<std::uint32_t> const& gens) const {
      return closure(gens).size() == _n;
    }

    Subgroup whole() const {
      Subgroup s{_id, {}};
      for (std::uint32_t i = 0; i < _n; ++i) {
        s.elements.push_back(i);
      }
      return s;
    }

    std::string name_of(std::uint32_t i) const {
      return i < _names.size() ? _names[i] : std::to_string(i);
    }

   private:
    static std::uint64_t next_id() {
      static std::atomic<std::uint64_t> counter{1};
      return counter++;
    }

    void validate() const {
      if (_n == 0 || _n > max_order) {
        throw std::invalid_argument("group order must be in [1, 256]");
      }
      if (_table.size() != _n * _n) {
        throw std::invalid_argument("table has the wrong size");
      }
      for (std::size_t a = 0; a < _n; ++a) {
        std::vector<bool> row(_n, false), col(_n, false);
        for (std::size_t b = 0; b < _n; ++b) {
          auto r = _table[a * _n + b];
          auto c = _table[b * _n + a];
          if (r >= _n || c >= _n || row[r] || col[c]) {
            throw std::invalid_argument("table is not a Latin square");
          }
          row[r] = col[c] = true;
        }
        if (_table[a] != a || _table[a * _n] != a) {
          throw std::invalid_argument("element 0 is not the identity");
        }
      }
      for (std::size_t a = 0; a < _n; ++a) {
        for (std::size_t b = 0; b < _n; ++b) {
          auto ab = _table[a * _n + b];
          for (std::size_t c = 0; c < _n; ++c) {
            if (_table[ab * _n + c] != _table[a * _n + _table[b * _n + c]]) {
              throw std::invalid_argument("table is not associative");
            }
          }
        }
      }
    }

    std::uint64_t                        _id;
    std::size_t                          _n;
    std::vector<std::uint32_t>           _table;
    std::vector<std::uint32_t>           _inverse;
    std::vector<int>                     _order_of;
    std::vector<std::string>             _names;
    std::map<std::string, std::uint32_t> _distinguished;
    std::string                          _description;
  };

  inline FiniteGroup FiniteGroup::from_permutations(
      std::vector<std::vector<std::uint32_t>> const& gens,
      std::vector<std::string> const&                gen_names,
      std::string                                    description) {
    using Perm = std::vector<std::uint32_t>;
    std::size_t m = gens.empty() ? 1 : gens[0].size();
    Perm        id(m);
    std::iota(id.begin(), id.end(), 0);
    auto compose = [](Perm const& p, Perm const& q) {
      // p then q, matching left-to-right products
      Perm r(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) {
        r[i] = q[p[i]];
      }
      return r;
    };
    std::vector<Perm>        elts{id};
    std::map<Perm, uint32_t> index{{id, 0}};
    for (std::size_t i = 0; i < elts.size(); ++i) {
      for (auto const& g : gens) {
        Perm y = compose(elts[i], g);
        if (!index.count(y)) {
          if (elts.size() >= max_order) {
            throw std::invalid_argument("permutation group too large");
          }
          index.emplace(y, static_cast<std::uint32_t>(elts.size()));
          elts.push_back(std::move(y));
        }
      }
    }
    std::size_t                n = elts.size();
    std::vector<std::uint32_t> table(n * n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        table[a * n + b] = index.at(compose(elts[a], elts[b]));
      }
    }
    std::map<std::string, std::uint32_t> dist;
    for (std::size_t i = 0; i < gens.size() && i < gen_names.size(); ++i) {
      dist[gen_names[i]] = index.at(gens[i]);
    }
    return FiniteGroup(std::move(table), n, {}, std::move(dist),
                       std::move(description));
  }

  ////////////////////////////////////////////////////////////////////////
  // Constructors
  ////////////////////////////////////////////////////////////////////////

  inline FiniteGroup cyclic(std::size_t n) {
    if (n < 1) {
      throw std::invalid_argument("cyclic group order must be positive");
    }
    std::vector<std::uint32_t> t(n * n);
    std::vector<std::string>   names;
    for (std::size_t a = 0; a < n; ++a) {
      names.push_back(a == 0 ? "1" : a == 1 ? "t" : "t^" + std::to_string(a));
      for (std::size_t b = 0; b < n; ++b) {
        t[a * n + b] = static_cast<std::uint32_t>((a + b) % n);
      }
    }
    std::map<std::string, std::uint32_t> d;
    if (n > 1) {
      d["t"] = 1;
    }
    return FiniteGroup(std::move(t), n, std::move(names), std::move(d),
                       "Z" + std::to_string(n));
  }

  // <x, y | x^2 = y^2 = (yx)^q = 1>.  Element (s, k) with index s*q + k is
  // x^s (yx)^k.
  inline FiniteGroup dihedral(std::size_t q) {
    if (q < 1) {
      throw std::invalid_argument("dihedral group needs q >= 1");
    }
    std::size_t                n = 2 * q;
    std::vector<std::uint32_t> t(n * n);
    std::vector<std::string>   names(n);
    auto rot = [](std::size_t k) {
      return k == 0 ? std::string() : k == 1 ? std::string("(yx)")
                                             : "(yx)^" + std::to_string(k);
    };
    for (std::size_t s1 = 0; s1 < 2; ++s1) {
      for (std::size_t k1 = 0; k1 < q; ++k1) {
        std::size_t a = s1 * q + k1;
        std::string nm = (s1 ? std::string("x") : std::string()) + rot(k1);
        names[a]       = nm.empty() ? "1" : nm;
        for (std::size_t s2 = 0; s2 < 2; ++s2) {
          for (std::size_t k2 = 0; k2 < q; ++k2) {
            std::size_t k = ((s2 ? q - k1 : k1) + k2) % q;
            t[a * n + s2 * q + k2] = static_cast<std::uint32_t>((s1 ^ s2) * q + k);
          }
        }
      }
    }
    std::map<std::string, std::uint32_t> d;
    d["x"] = static_cast<std::uint32_t>(q);
    d["y"] = static_cast<std::uint32_t>(q + (q - 1) % q);  // x (yx)^-1
    if (q > 1) {
      d["yx"] = 1;
    }
    if (q == 1) {
      names[1] = "x";
    } else {
      names[d["y"]] = "y";
    }
    return FiniteGroup(std::move(t), n, std::move(names), std::move(d),
                       "D" + std::to_string(q));
  }

  // Componentwise product; names are pairs.  Distinguished elements of g
  // keep their names, those of h are renamed on collision.
  inline FiniteGroup direct_product(FiniteGroup const& g,
                                    FiniteGroup const& h,
                                    std::string        description = "") {
    std::size_t m = g.order(), k = h.order(), n = m * k;
    if (n > FiniteGroup::max_order) {
      throw std::invalid_argument("direct product too large");
    }
    std::vector<std::uint32_t> t(n * n);
    std::vector<std::string>   names(n);
    for (std::uint32_t a1 = 0; a1 < m; ++a1) {
      for (std::uint32_t b1 = 0; b1 < k; ++b1) {
        std::uint32_t a = a1 * k + b1;
        std::string   l = g.name_of(a1), r = h.name_of(b1);
        names[a] = l == "1" ? r : r == "1" ? l : "(" + l + "," + r + ")";
        for (std::uint32_t a2 = 0; a2 < m; ++a2) {
          for (std::uint32_t b2 = 0; b2 < k; ++b2) {
            t[a * n + a2 * k + b2] = g.mul(a1, a2) * k + h.mul(b1, b2);
          }
        }
      }
    }
    if (names[0] != "1") {
      names[0] = "1";
    }
    std::map<std::string, std::uint32_t> d;
    for (auto const& [nm, i] : g.distinguished()) {
      d[nm] = i * static_cast<std::uint32_t>(k);
    }
    for (auto const& [nm, i] : h.distinguished()) {
      std::string key = nm;
      while (d.count(key)) {
        key += "'";
      }
      d[key] = i;
    }
    if (description.empty()) {
      description = g.description() + "x" + h.description();
    }
    return FiniteGroup(std::move(t), n, std::move(names), std::move(d),
                       std::move(description));
  }

  // Z2^k with basis e1..ek.
  inline FiniteGroup elementary_abelian_2(std::size_t k) {
    if (k > 8) {
      throw std::invalid_argument("Z2^k capped at k = 8");
    }
    std::size_t                n = std::size_t(1) << k;
    std::vector<std::uint32_t> t(n * n);
    std::vector<std::string>   names(n);
    for (std::uint32_t a = 0; a < n; ++a) {
      std::string nm;
      for (std::size_t i = 0; i < k; ++i) {
        if (a & (1u << i)) {
          nm += (nm.empty() ? "e" : " e") + std::to_string(i + 1);
        }
      }
      names[a] = nm.empty() ? "1" : nm;
      for (std::uint32_t b = 0; b < n; ++b) {
        t[a * n + b] = a ^ b;
      }
    }
    std::map<std::string, std::uint32_t> d;
    for (std::size_t i = 0; i < k; ++i) {
      d["e" + std::to_string(i + 1)] = 1u << i;
    }
    return FiniteGroup(std::move(t), n, std::move(names), std::move(d),
                       "Z2^" + std::to_string(k));
  }

  // Z2 x D_r with c generating the Z2 and a, b the dihedral involutions,
  // (ab)^r = 1.
  inline FiniteGroup z2_times_dihedral(std::size_t r) {
    auto        d = dihedral(r);
    auto        z = cyclic(2);
    std::size_t n = 4 * r;
    std::vector<std::uint32_t> t(n * n);
    for (std::uint32_t a = 0; a < n; ++a) {
      for (std::uint32_t b = 0; b < n; ++b) {
        t[a * n + b] = z.mul(a / (2 * r), b / (2 * r)) * (2 * r)
                       + d.mul(a % (2 * r), b % (2 * r));
      }
    }
    std::vector<std::string> names(n);
    for (std::uint32_t a = 0; a < n; ++a) {
      std::string dn = d.name_of(a % (2 * r));
      if (a / (2 * r) == 0) {
        names[a] = dn;
      } else {
        names[a] = dn == "1" ? "c" : "c " + dn;
      }
    }
    std::map<std::string, std::uint32_t> dist;
    dist["c"] = static_cast<std::uint32_t>(2 * r);
    dist["a"] = d.element("x").index;
    dist["b"] = d.element("y").index;
    return FiniteGroup(std::move(t), n, std::move(names), std::move(dist),
                       "Z2xD" + std::to_string(r));
  }

  // The three groups generated by involutions t1, t2, t3 with t1 t2 of order
  // 2 and (t1 t3, t2 t3) of orders (3, 3), (3, 4), (3, 5).
  inline FiniteGroup z2_ltimes_a4() {
    // Coxeter generators (01), (23), (12) of S4.
    return FiniteGroup::from_permutations(
        {{1, 0, 2, 3}, {0, 1, 3, 2}, {0, 2, 1, 3}}, {"t1", "t2", "t3"},
        "Z2xA4-semidirect(S4)");
  }

  inline FiniteGroup z2_ltimes_s4() {
    // Signed permutations of three letters acting on {+1,+2,+3,-1,-2,-3}:
    // swap 1,2; negate 3; swap 2,3.
    return FiniteGroup::from_permutations(
        {{1, 0, 2, 4, 3, 5}, {0, 1, 5, 3, 4, 2}, {0, 2, 1, 3, 5, 4}},
        {"t1", "t2", "t3"},
        "Z2xS4-semidirect(B3)");
  }

  inline FiniteGroup z2_ltimes_a5() {
    // Z2 x A5: each t_i is c times an involution of A5.  The involutions
    // (01)(23), (12)(34), (02)(13)... are found by search.
    std::vector<std::vector<std::uint32_t>> inv;
    std::vector<std::uint32_t>              p{0, 1, 2, 3, 4};
    auto is_even = [](std::vector<std::uint32_t> const& q) {
      int s = 0;
      for (std::size_t i = 0; i < q.size(); ++i) {
        for (std::size_t j = i + 1; j < q.size(); ++j) {
          s += q[i] > q[j];
        }
      }
      return s % 2 == 0;
    };
    do {
      bool invol = true, ident = true;
      for (std::uint32_t i = 0; i < 5; ++i) {
        invol = invol && p[p[i]] == i;
        ident = ident && p[i] == i;
      }
      if (invol && !ident && is_even(p)) {
        inv.push_back(p);
      }
    } while (std::next_permutation(p.begin(), p.end()));
    auto mulp = [](auto const& a, auto const& b) {
      std::vector<std::uint32_t> r(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) {
        r[i] = b[a[i]];
      }
      return r;
    };
    auto ord = [&](auto const& a) {
      std::vector<std::uint32_t> id{0, 1, 2, 3, 4}, x = a;
      int                        k = 1;
      while (x != id) {
        x = mulp(x, a);
        ++k;
      }
      return k;
    };
    for (auto const& a : inv) {
      for (auto const& b : inv) {
        if (ord(mulp(a, b)) != 2) {
          continue;
        }
        for (auto const& c : inv) {
          if (ord(mulp(a, c)) != 3 || ord(mulp(b, c)) != 5) {
            continue;
          }
          // Append two points swapped by the central Z2.
          auto ext = [](std::vector<std::uint32_t> q) {
            q.push_back(6);
            q.push_back(5);
            return q;
          };
          auto g = FiniteGroup::from_permutations(
              {ext(a), ext(b), ext(c)}, {"t1", "t2", "t3"},
              "Z2xA5");
          if (g.order() == 120) {
            return g;
          }
        }
      }
    }
    throw std::logic_error("no Coxeter generators found in A5");
  }

  ////////////////////////////////////////////////////////////////////////
  // Subgroup operations on GroupElement values
  ////////////////////////////////////////////////////////////////////////

  inline Subgroup centralizer(FiniteGroup const& g, GroupElement x) {
    g.check(x);
    return {g.id(), g.centralizer_of(x.index)};
  }

  inline bool are_conjugate(FiniteGroup const& g,
                            GroupElement       x,
                            GroupElement       y) {
    g.check(x);
    g.check(y);
    return g.conjugate(x.index, y.index);
  }

  inline Subgroup subgroup_generated(FiniteGroup const&               g,
                                     std::vector<GroupElement> const& xs) {
    std::vector<std::uint32_t> idx;
    for (auto x : xs) {
      g.check(x);
      idx.push_back(x.index);
    }
    return {g.id(), g.closure(idx)};
  }

  // [h : k]; k must be contained in h.
  inline std::size_t subgroup_index(FiniteGroup const& g,
                                    Subgroup const&    h,
                                    Subgroup const&    k) {
    g.check(h);
    g.check(k);
    for (auto x : k.elements) {
      if (!h.contains(x)) {
        throw NotASubgroup("second subgroup is not contained in the first");
      }
    }
    return h.order() / k.order();
  }

  // Is g isomorphic to Z2 x D_r with r = |g| / 4?  (r = 1 means Z2^2.)
  inline std::optional<std::size_t> as_z2_times_dihedral(
      FiniteGroup const&                g,
      std::vector<std::uint32_t> const& subset = {}) {
    std::vector<std::uint32_t> elts = subset;
    if (elts.empty()) {
      for (std::uint32_t i = 0; i < g.order(); ++i) {
        elts.push_back(i);
      }
    }
    std::size_t n = elts.size();
    if (n % 4 != 0) {
      return std::nullopt;
    }
    std::size_t                r = n / 4;
    std::vector<std::uint32_t> inv, central;
    for (auto a : elts) {
      if (g.order_of(a) != 2) {
        continue;
      }
      inv.push_back(a);
      bool c = true;
      for (auto b : elts) {
        c = c && g.commute(a, b);
      }
      if (c) {
        central.push_back(a);
      }
    }
    for (auto c : central) {
      for (auto u : inv) {
        for (auto v : inv) {
          if (u >= v && r > 1) {
            continue;
          }
          if (static_cast<std::size_t>(g.order_of(g.mul(u, v))) != r
              && !(r == 1 && u == v)) {
            continue;
          }
          auto d = g.closure({u, v});
          if (d.size() == 2 * r
              && !std::binary_search(d.begin(), d.end(), c)) {
            return r;
          }
        }
      }
    }
    return std::nullopt;
  }

}  // namespace schottky

#endif  // SCHOTTKY_FINITE_GROUPS_HPP_
