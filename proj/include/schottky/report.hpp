#ifndef SCHOTTKY_REPORT_HPP_
#define SCHOTTKY_REPORT_HPP_

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "constructions.hpp"
#include "errors.hpp"
#include "quotient.hpp"
#include "realize.hpp"
#include "symmetry_count.hpp"

// Analysis reports: everything the tool computes for one epimorphism, with
// the bound comparisons re-checked on construction.  Rationals are carried
// as "p/q" strings so the JSON form is exact.

namespace schottky {

  inline constexpr int report_schema_version = 1;

  inline std::string rational_string(Rational const& r) {
    return r.denominator() == 1
               ? std::to_string(r.numerator())
               : std::to_string(r.numerator()) + "/"
                     + std::to_string(r.denominator());
  }

  struct TermEntry {
    std::string symmetry;  // canonical symmetry label
    std::string kind;
    bool        infinite_centralizer = false;
    long long   index                = 0;

    bool operator==(TermEntry const&) const = default;
  };

  struct ProfileEntry {
    std::string            element;
    std::size_t            class_size = 0;
    long long              alpha = 0, beta = 0, epsilon = 0, m = 0;
    bool                   fixed_point_free = false;
    bool                   maximal          = false;  // m = g + 1
    std::vector<TermEntry> terms;

    bool operator==(ProfileEntry const&) const = default;
  };

  struct PairEntry {
    std::string tau1, tau2;
    long long   q = 0, m1 = 0, m2 = 0, sum = 0, bound = 0;
    bool        sharp = false;
    // surface bounds for the same g and q, side by side
    std::string riemann_odd, riemann_even;
    long long   riemann_noncommuting = 0;
    bool        noncommuting_applies = false;
    bool        klein_four_required  = false;
    bool        klein_four           = false;

    bool operator==(PairEntry const&) const = default;
  };

  struct TripleEntry {
    std::vector<std::string> taus;
    std::vector<long long>   m;
    long long                sum = 0;
    std::string              subgroup;  // "Z2xD<r>" or "other"
    std::string              bound;
    bool                     sharp = false;

    bool operator==(TripleEntry const&) const = default;
  };

  struct RelationEntry {
    std::string name;
    double      deviation = 0;

    bool operator==(RelationEntry const&) const = default;
  };

  struct GeometryEntry {
    bool                       passed = false;
    std::string                condition, detail;
    std::size_t                circles = 0;
    std::vector<RelationEntry> relations;

    bool operator==(GeometryEntry const&) const = default;
  };

  struct AnalysisReport {
    int                                              schema_version = report_schema_version;
    std::string                                      source;
    std::vector<std::string>                         generators;
    int                                              alpha = 0, beta = 0, gamma = 0,
                                                     delta = 0, epsilon = 0;
    std::string                                      group;
    std::size_t                                      group_order = 0;
    std::vector<std::pair<std::string, std::string>> images;
    std::string                                      euler_characteristic;
    long long                                        rank = 0, euler_rank = 0, rs_rank = 0;
    std::vector<ProfileEntry>                        profiles;    // one per class
    std::vector<ProfileEntry>                        designated;  // tau_1, tau_2, ...
    bool                                             bounds_applicable = false;
    std::vector<PairEntry>                           pairs;
    std::optional<TripleEntry>                       triple;
    std::size_t                                      maximal_classes = 0;
    std::optional<GeometryEntry>                     geometry;
    std::optional<double>                            timing_ms;

    bool operator==(AnalysisReport const&) const = default;
  };

  ////////////////////////////////////////////////////////////////////////
  // JSON
  ////////////////////////////////////////////////////////////////////////

  inline void to_json(nlohmann::json& j, TermEntry const& t) {
    j = {{"symmetry", t.symmetry},
         {"kind", t.kind},
         {"infinite_centralizer", t.infinite_centralizer},
         {"index", t.index}};
  }
  inline void from_json(nlohmann::json const& j, TermEntry& t) {
    j.at("symmetry").get_to(t.symmetry);
    j.at("kind").get_to(t.kind);
    j.at("infinite_centralizer").get_to(t.infinite_centralizer);
    j.at("index").get_to(t.index);
  }

  inline void to_json(nlohmann::json& j, ProfileEntry const& p) {
    j = {{"element", p.element},     {"class_size", p.class_size},
         {"alpha", p.alpha},         {"beta", p.beta},
         {"epsilon", p.epsilon},     {"m", p.m},
         {"fixed_point_free", p.fixed_point_free},
         {"maximal", p.maximal},     {"terms", p.terms}};
  }
  inline void from_json(nlohmann::json const& j, ProfileEntry& p) {
    j.at("element").get_to(p.element);
    j.at("class_size").get_to(p.class_size);
    j.at("alpha").get_to(p.alpha);
    j.at("beta").get_to(p.beta);
    j.at("epsilon").get_to(p.epsilon);
    j.at("m").get_to(p.m);
    j.at("fixed_point_free").get_to(p.fixed_point_free);
    j.at("maximal").get_to(p.maximal);
    j.at("terms").get_to(p.terms);
  }

  inline void to_json(nlohmann::json& j, PairEntry const& p) {
    j = {{"tau1", p.tau1},
         {"tau2", p.tau2},
         {"q", p.q},
         {"m1", p.m1},
         {"m2", p.m2},
         {"sum", p.sum},
         {"bound", p.bound},
         {"sharp", p.sharp},
         {"riemann",
          {{"odd", p.riemann_odd},
           {"even", p.riemann_even},
           {"noncommuting", p.riemann_noncommuting},
           {"noncommuting_applies", p.noncommuting_applies}}},
         {"klein_four_required", p.klein_four_required},
         {"klein_four", p.klein_four}};
  }
  inline void from_json(nlohmann::json const& j, PairEntry& p) {
    j.at("tau1").get_to(p.tau1);
    j.at("tau2").get_to(p.tau2);
    j.at("q").get_to(p.q);
    j.at("m1").get_to(p.m1);
    j.at("m2").get_to(p.m2);
    j.at("sum").get_to(p.sum);
    j.at("bound").get_to(p.bound);
    j.at("sharp").get_to(p.sharp);
    auto const& r = j.at("riemann");
    r.at("odd").get_to(p.riemann_odd);
    r.at("even").get_to(p.riemann_even);
    r.at("noncommuting").get_to(p.riemann_noncommuting);
    r.at("noncommuting_applies").get_to(p.noncommuting_applies);
    j.at("klein_four_required").get_to(p.klein_four_required);
    j.at("klein_four").get_to(p.klein_four);
  }

  inline void to_json(nlohmann::json& j, TripleEntry const& t) {
    j = {{"taus", t.taus},         {"m", t.m},         {"sum", t.sum},
         {"subgroup", t.subgroup}, {"bound", t.bound}, {"sharp", t.sharp}};
  }
  inline void from_json(nlohmann::json const& j, TripleEntry& t) {
    j.at("taus").get_to(t.taus);
    j.at("m").get_to(t.m);
    j.at("sum").get_to(t.sum);
    j.at("subgroup").get_to(t.subgroup);
    j.at("bound").get_to(t.bound);
    j.at("sharp").get_to(t.sharp);
  }

  inline void to_json(nlohmann::json& j, RelationEntry const& r) {
    j = {{"name", r.name}, {"deviation", r.deviation}};
  }
  inline void from_json(nlohmann::json const& j, RelationEntry& r) {
    j.at("name").get_to(r.name);
    j.at("deviation").get_to(r.deviation);
  }

  inline void to_json(nlohmann::json& j, GeometryEntry const& g) {
    j = {{"passed", g.passed},   {"condition", g.condition},
         {"detail", g.detail},   {"circles", g.circles},
         {"relations", g.relations}};
  }
  inline void from_json(nlohmann::json const& j, GeometryEntry& g) {
    j.at("passed").get_to(g.passed);
    j.at("condition").get_to(g.condition);
    j.at("detail").get_to(g.detail);
    j.at("circles").get_to(g.circles);
    j.at("relations").get_to(g.relations);
  }

  inline void to_json(nlohmann::json& j, AnalysisReport const& r) {
    nlohmann::json images = nlohmann::json::array();
    for (auto const& [g, x] : r.images) {
      images.push_back({{"generator", g}, {"image", x}});
    }
    j = {{"schema_version", r.schema_version},
         {"source", r.source},
         {"generators", r.generators},
         {"signature",
          {{"alpha", r.alpha},
           {"beta", r.beta},
           {"gamma", r.gamma},
           {"delta", r.delta},
           {"epsilon", r.epsilon}}},
         {"group", r.group},
         {"group_order", r.group_order},
         {"images", images},
         {"euler_characteristic", r.euler_characteristic},
         {"rank", r.rank},
         {"euler_rank", r.euler_rank},
         {"rs_rank", r.rs_rank},
         {"profiles", r.profiles},
         {"designated", r.designated},
         {"bounds_applicable", r.bounds_applicable},
         {"pairs", r.pairs},
         {"maximal_classes", r.maximal_classes}};
    j["triple"]   = r.triple ? nlohmann::json(*r.triple) : nlohmann::json();
    j["geometry"] = r.geometry ? nlohmann::json(*r.geometry) : nlohmann::json();
    if (r.timing_ms) {
      j["timing_ms"] = *r.timing_ms;
    }
  }

  inline void from_json(nlohmann::json const& j, AnalysisReport& r) {
    j.at("schema_version").get_to(r.schema_version);
    j.at("source").get_to(r.source);
    j.at("generators").get_to(r.generators);
    auto const& s = j.at("signature");
    s.at("alpha").get_to(r.alpha);
    s.at("beta").get_to(r.beta);
    s.at("gamma").get_to(r.gamma);
    s.at("delta").get_to(r.delta);
    s.at("epsilon").get_to(r.epsilon);
    j.at("group").get_to(r.group);
    j.at("group_order").get_to(r.group_order);
    r.images.clear();
    for (auto const& x : j.at("images")) {
      r.images.emplace_back(x.at("generator").get<std::string>(),
                            x.at("image").get<std::string>());
    }
    j.at("euler_characteristic").get_to(r.euler_characteristic);
    j.at("rank").get_to(r.rank);
    j.at("euler_rank").get_to(r.euler_rank);
    j.at("rs_rank").get_to(r.rs_rank);
    j.at("profiles").get_to(r.profiles);
    j.at("designated").get_to(r.designated);
    j.at("bounds_applicable").get_to(r.bounds_applicable);
    j.at("pairs").get_to(r.pairs);
    j.at("maximal_classes").get_to(r.maximal_classes);
    r.triple.reset();
    if (j.contains("triple") && !j["triple"].is_null()) {
      r.triple = j["triple"].get<TripleEntry>();
    }
    r.geometry.reset();
    if (j.contains("geometry") && !j["geometry"].is_null()) {
      r.geometry = j["geometry"].get<GeometryEntry>();
    }
    r.timing_ms.reset();
    if (j.contains("timing_ms")) {
      r.timing_ms = j["timing_ms"].get<double>();
    }
  }

  inline std::string serialize(AnalysisReport const& r, int indent = 2) {
    return nlohmann::json(r).dump(indent);
  }

  inline AnalysisReport parse_report(std::string const& text) {
    return nlohmann::json::parse(text).get<AnalysisReport>();
  }

  ////////////////////////////////////////////////////////////////////////
  // Building
  ////////////////////////////////////////////////////////////////////////

  inline GeometryEntry geometry_entry(ExampleGeometry const& g) {
    GeometryEntry out{g.report.passed, g.report.condition, g.report.detail,
                      g.system.entries.size(), {}};
    for (auto const& r : g.relations) {
      out.relations.push_back({r.name, r.deviation});
    }
    return out;
  }

  inline GeometryEntry geometry_entry(Realization const& g) {
    return {g.report.passed, g.report.condition, g.report.detail,
            g.system.entries.size(), {}};
  }

  // Distinguished generators of the target that are symmetries.
  inline std::vector<std::uint32_t> default_symmetries(Epimorphism const& e) {
    auto const& G = e.target();
    auto        o = kernel_orientation_check(e);
    std::vector<std::uint32_t> out;
    for (auto const& [name, x] : G.distinguished()) {
      if (G.order_of(x) == 2 && o.parity[x] == 1
          && std::find(out.begin(), out.end(), x) == out.end()) {
        out.push_back(x);
      }
    }
    return out;
  }

  namespace detail {
    inline ProfileEntry profile_entry(FiniteGroup const&                    G,
                                      std::vector<CanonicalSymmetry> const& syms,
                                      std::uint32_t                         x,
                                      FixedPointProfile const&              p,
                                      long long                             g) {
      ProfileEntry out;
      out.element          = G.name_of(x);
      out.class_size       = G.conjugacy_class_of(x).size();
      out.alpha            = p.alpha;
      out.beta             = p.beta;
      out.epsilon          = p.epsilon;
      out.m                = p.m();
      out.fixed_point_free = p.fixed_point_free;
      out.maximal          = p.m() == g + 1;
      for (auto const& t : p.terms) {
        out.terms.push_back({syms[t.symmetry].label, to_string(t.kind),
                             t.infinite_centralizer,
                             static_cast<long long>(t.index)});
      }
      return out;
    }

    inline void trap(bool ok, std::string const& what) {
      if (!ok) {
        throw InvariantViolation(what);
      }
    }
  }  // namespace detail

  // Runs the whole pipeline.  Throws InvalidEpimorphism, TorsionInKernel /
  // KernelNotTorsionFree, KernelNotOrientationPreserving, and
  // InvariantViolation when a bound comparison fails.
  inline AnalysisReport build_report(Epimorphism const&          e,
                                     std::vector<std::uint32_t>  designated,
                                     std::string                 source,
                                     std::optional<GeometryEntry> geometry = {}) {
    auto const& s = e.source();
    auto const& G = e.target();
    auto const& p = s.presentation();

    AnalysisReport r;
    r.source      = std::move(source);
    r.generators  = p.names();
    r.alpha       = s.alpha();
    r.beta        = s.beta();
    r.gamma       = s.gamma();
    r.delta       = s.delta();
    r.epsilon     = s.epsilon();
    r.group       = G.description();
    r.group_order = G.order();
    for (std::size_t i = 0; i < p.generators.size(); ++i) {
      r.images.emplace_back(p.generators[i].name, G.name_of(e.image(i)));
    }
    r.euler_characteristic = rational_string(euler_characteristic(s));

    auto kr      = kernel_rank(e);
    r.rank       = kr.rank;
    r.euler_rank = kr.euler_rank;
    r.rs_rank    = kr.rs_rank;
    long long g  = r.rank;

    auto syms = complete_symmetry_set(s);
    for (auto const& c : all_profiles(e)) {
      r.profiles.push_back(
          detail::profile_entry(G, syms, c.representative, c.profile, g));
    }
    if (designated.empty()) {
      designated = default_symmetries(e);
    }
    for (auto t : designated) {
      r.designated.push_back(detail::profile_entry(
          G, syms, t, fixed_point_profile(e, G.element(t)), g));
    }

    for (auto const& c : r.profiles) {
      detail::trap(c.m <= g + 1, "symmetry " + c.element + " has "
                                     + std::to_string(c.m)
                                     + " components, more than g + 1");
      r.maximal_classes += c.maximal ? 1 : 0;
    }

    r.bounds_applicable = g >= 2;
    if (r.bounds_applicable) {
      detail::trap(r.maximal_classes <= 1,
                   "more than one class of maximal symmetries");
      auto b = check_bounds(e, g, designated);
      for (auto const& c : b.pairs) {
        PairEntry pe;
        pe.tau1                 = G.name_of(c.tau1);
        pe.tau2                 = G.name_of(c.tau2);
        pe.q                    = c.q;
        pe.m1                   = c.m1;
        pe.m2                   = c.m2;
        pe.sum                  = c.m1 + c.m2;
        pe.bound                = c.bound;
        pe.sharp                = c.sharp;
        pe.riemann_odd          = rational_string(c.riemann.odd_bound);
        pe.riemann_even         = rational_string(c.riemann.even_bound);
        pe.riemann_noncommuting = c.riemann.noncommuting_bound;
        pe.noncommuting_applies = c.riemann.noncommuting_applies;
        pe.klein_four_required  = c.klein_four_required;
        pe.klein_four           = c.klein_four;
        // re-verify from scratch rather than trusting the flags
        detail::trap(pe.sum <= pair_bound(g, pe.q),
                     "pair " + pe.tau1 + ", " + pe.tau2 + " exceeds its bound");
        detail::trap(!pe.klein_four_required || pe.klein_four,
                     "pair " + pe.tau1 + ", " + pe.tau2
                         + " reaches g + 3 without commuting");
        r.pairs.push_back(std::move(pe));
      }
      if (b.triple) {
        auto const& c = *b.triple;
        TripleEntry te;
        te.taus     = {G.name_of(c.tau1), G.name_of(c.tau2), G.name_of(c.tau3)};
        te.m        = {c.m1, c.m2, c.m3};
        te.sum      = c.m1 + c.m2 + c.m3;
        te.subgroup = c.h.z2_times_dihedral ? "Z2xD" + std::to_string(c.h.r)
                                            : "other";
        te.bound    = rational_string(c.bound);
        te.sharp    = c.sharp;
        // sum <= p/q  iff  sum * q <= p
        detail::trap(te.sum * c.bound.denominator() <= c.bound.numerator(),
                     "triple exceeds its bound");
        r.triple = std::move(te);
      }
      detail::trap(!b.violated(), "bounds report flags a contradiction");
    }
    r.geometry = std::move(geometry);
    return r;
  }

  inline AnalysisReport build_example_report(ExampleCase const& ex) {
    std::string src = "example " + ex.id;
    for (auto const& [k, v] : ex.params) {
      src += " " + k + "=" + std::to_string(v);
    }
    std::optional<GeometryEntry> geo;
    if (ex.geometry) {
      geo = geometry_entry(*ex.geometry);
    }
    return build_report(ex.epimorphism, ex.designated, src, std::move(geo));
  }

  ////////////////////////////////////////////////////////////////////////
  // Text
  ////////////////////////////////////////////////////////////////////////

  inline std::string to_text(AnalysisReport const& r) {
    std::ostringstream o;
    auto               profile = [&](ProfileEntry const& p) {
      o << "  " << p.element << ": alpha=" << p.alpha << " beta=" << p.beta
        << " epsilon=" << p.epsilon << " m=" << p.m;
      if (p.fixed_point_free) {
        o << " (fixed-point free)";
      }
      if (p.maximal) {
        o << " (maximal)";
      }
      o << "\n";
    };
    o << r.source << "\n";
    o << "signature: alpha=" << r.alpha << " beta=" << r.beta
      << " gamma=" << r.gamma << " delta=" << r.delta
      << " epsilon=" << r.epsilon << "\n";
    o << "quotient: " << r.group << " (order " << r.group_order << ")\n";
    for (auto const& [g, x] : r.images) {
      o << "  " << g << " -> " << x << "\n";
    }
    o << "euler characteristic: " << r.euler_characteristic << "\n";
    o << "kernel rank g = " << r.rank << " (Euler " << r.euler_rank
      << ", Reidemeister-Schreier " << r.rs_rank << ")\n";
    o << "symmetry classes:\n";
    for (auto const& p : r.profiles) {
      profile(p);
    }
    o << "designated symmetries:\n";
    for (auto const& p : r.designated) {
      profile(p);
    }
    if (!r.bounds_applicable) {
      o << "bounds: not applicable (g < 2)\n";
    }
    for (auto const& p : r.pairs) {
      o << "pair " << p.tau1 << ", " << p.tau2 << ": q=" << p.q << " m1+m2="
        << p.sum << " bound=" << p.bound << (p.sharp ? " sharp" : "")
        << " | surface bounds: odd " << p.riemann_odd << ", even "
        << p.riemann_even;
      if (p.noncommuting_applies) {
        o << ", noncommuting " << p.riemann_noncommuting;
      }
      o << "\n";
    }
    if (r.triple) {
      auto const& t = *r.triple;
      o << "triple " << t.taus[0] << ", " << t.taus[1] << ", " << t.taus[2]
        << " (" << t.subgroup << "): m=(" << t.m[0] << "," << t.m[1] << ","
        << t.m[2] << ") sum=" << t.sum << " bound=" << t.bound
        << (t.sharp ? " sharp" : "") << "\n";
    }
    if (r.geometry) {
      auto const& g = *r.geometry;
      o << "geometry: " << g.circles << " circles, checker "
        << (g.passed ? "passed" : "FAILED (" + g.condition + ": " + g.detail + ")")
        << "\n";
      for (auto const& rel : g.relations) {
        o << "  " << rel.name << "  deviation " << rel.deviation << "\n";
      }
    }
    if (r.timing_ms) {
      o << "time: " << *r.timing_ms << " ms\n";
    }
    return o.str();
  }

}  // namespace schottky

#endif  // SCHOTTKY_REPORT_HPP_
