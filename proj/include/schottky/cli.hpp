#ifndef SCHOTTKY_CLI_HPP_
#define SCHOTTKY_CLI_HPP_

#include <chrono>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "constructions.hpp"
#include "errors.hpp"
#include "report.hpp"
#include "search.hpp"
#include "spec_file.hpp"

// Command-line front end.  Kept in the library so tests can drive it
// without spawning processes.
//
// Exit codes:
//   0 ok
//   1 unexpected internal error
//   2 parse error (command line or spec file)
//   3 invalid structure
//   4 invalid epimorphism (relators, surjectivity, orientation of kernel)
//   5 torsion in the kernel
//   6 unknown example id
//   7 invalid parameters (e.g. genus below 2)
//   8 search space too large
//   9 invariant trap: a computed count contradicts a proven bound

namespace schottky::cli {

  enum ExitCode : int {
    ok                  = 0,
    internal            = 1,
    parse_error         = 2,
    invalid_structure   = 3,
    invalid_epimorphism = 4,
    torsion             = 5,
    unknown_example     = 6,
    invalid_params      = 7,
    search_too_large    = 8,
    invariant_trap      = 9,
  };

  namespace detail {

    using Clock = std::chrono::steady_clock;

    inline double ms_since(Clock::time_point t0) {
      return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    }

    inline void emit(std::ostream& out, AnalysisReport const& r, bool json) {
      if (json) {
        out << serialize(r) << "\n";
      } else {
        out << to_text(r);
      }
    }

    inline std::optional<GeometryEntry> realize(StructuralGroup const& s,
                                                LayoutHints const&     h,
                                                Tolerance              tol) {
      try {
        return geometry_entry(realize_geometrically(s, h, tol));
      } catch (LayoutFailure const& ex) {
        return GeometryEntry{false, "layout", ex.what(), 0, {}};
      } catch (NumericallyAmbiguous const& ex) {
        return GeometryEntry{false, "ambiguous", ex.what(), 0, {}};
      }
    }

    inline std::vector<std::uint32_t> designated(GroupSpecFile const& f,
                                                 FiniteGroup const&   G) {
      std::vector<std::uint32_t> out;
      for (auto const& s : f.symmetries) {
        out.push_back(parse_element(G, s));
      }
      return out;
    }

    inline std::array<long long, 3> parse_profile(std::string const& s) {
      std::array<long long, 3> p{};
      std::stringstream        in(s);
      std::string              tok;
      std::size_t              i = 0;
      while (std::getline(in, tok, ',')) {
        if (i == 3) {
          throw SpecParseError("profile needs exactly three counts");
        }
        p[i++] = schottky::detail::as_integer(tok, "profile");
      }
      if (i != 3) {
        throw SpecParseError("profile needs exactly three counts");
      }
      return p;
    }

  }  // namespace detail

  struct Options {
    bool        json   = false;
    bool        timing = false;
    double      tolerance = 0;  // 0: default / environment
    std::string file;
    // example
    std::string id;
    std::optional<long long> q, r, n;
    // search
    std::string target;
    bool        first = false;
    bool        up_to_automorphism = false;
    long long   genus = 0;
    std::string profile;
  };

  inline Tolerance tolerance_of(Options const& o) {
    Tolerance t = Tolerance::from_environment();
    if (o.tolerance > 0) {
      t.eps = o.tolerance;
    }
    return t;
  }

  inline int cmd_analyze(Options const& o, std::ostream& out) {
    auto t0  = detail::Clock::now();
    auto tol = tolerance_of(o);
    auto f   = load_spec(o.file);
    auto s   = spec_structure(f);
    auto e   = spec_epimorphism(f, s);
    std::optional<GeometryEntry> geo;
    if (f.layout) {
      geo = detail::realize(s, *f.layout, tol);
    }
    auto r = build_report(e, detail::designated(f, e.target()), o.file, geo);
    if (o.timing) {
      r.timing_ms = detail::ms_since(t0);
    }
    detail::emit(out, r, o.json);
    return ok;
  }

  inline int cmd_example(Options const& o, std::ostream& out) {
    auto                             t0 = detail::Clock::now();
    std::map<std::string, long long> p;
    if (o.q) {
      p["q"] = *o.q;
    }
    if (o.r) {
      p["r"] = *o.r;
    }
    if (o.n) {
      p["n"] = *o.n;
    }
    auto ex = make_example(o.id, p, tolerance_of(o));
    auto r  = build_example_report(ex);
    if (o.timing) {
      r.timing_ms = detail::ms_since(t0);
    }
    detail::emit(out, r, o.json);
    return ok;
  }

  inline int cmd_impossibility(Options const& o, std::ostream& out) {
    ImpossibilitySearchOptions so;
    if (o.first) {
      so.max_witnesses = 1;
    }
    auto res = exhaustive_impossibility_search(o.genus,
                                               detail::parse_profile(o.profile),
                                               so);
    if (o.json) {
      nlohmann::json w = nlohmann::json::array();
      for (auto const& x : res.witnesses) {
        std::vector<std::string> kinds;
        for (auto const& f : x.factors) {
          kinds.push_back(to_string(f.kind));
        }
        w.push_back({{"factors", kinds},
                     {"group", x.group},
                     {"images", x.images},
                     {"taus", x.taus},
                     {"m", x.m}});
      }
      nlohmann::json j{{"genus", res.g},
                       {"profile", res.target},
                       {"groups", res.groups},
                       {"structures", res.structures},
                       {"epimorphisms", res.epimorphisms},
                       {"witnesses", w}};
      out << j.dump(2) << "\n";
    } else {
      out << "genus " << res.g << ", profile (" << res.target[0] << ","
          << res.target[1] << "," << res.target[2] << ")\n";
      out << "groups scanned:";
      for (auto const& g : res.groups) {
        out << " " << g;
      }
      out << "\nstructures: " << res.structures
          << "\nepimorphisms: " << res.epimorphisms
          << "\nwitnesses: " << res.witnesses.size() << "\n";
      for (auto const& x : res.witnesses) {
        out << "  " << x.group << ":";
        for (auto const& f : x.factors) {
          out << " " << to_string(f.kind);
        }
        out << "  m=(" << x.m[0] << "," << x.m[1] << "," << x.m[2] << ")\n";
      }
    }
    return ok;
  }

  inline int cmd_search(Options const& o, std::ostream& out) {
    if (!o.profile.empty() || o.genus != 0) {
      if (o.profile.empty() || o.genus == 0) {
        throw SpecParseError("--genus and --profile go together");
      }
      return cmd_impossibility(o, out);
    }
    if (o.file.empty() || o.target.empty()) {
      throw SpecParseError("search needs a spec file and --target");
    }
    auto f  = load_spec(o.file);
    auto s  = spec_structure(f);
    auto qs = parse_target(o.target);
    auto G  = make_group(qs);
    SearchOptions so;
    so.orientation = qs.group == "dihedral"
                         ? OrientationConstraint::cyclic_rotation
                         : OrientationConstraint::kernel_preserving;
    so.up_to_automorphism = o.up_to_automorphism;
    if (o.first) {
      so.max_results = 1;
    }
    auto hits = find_epimorphisms(s, G, so);
    std::vector<AnalysisReport> reports;
    for (std::size_t i = 0; i < hits.size(); ++i) {
      reports.push_back(build_report(hits[i], {},
                                     o.file + " hit " + std::to_string(i + 1)));
    }
    if (o.json) {
      out << nlohmann::json(reports).dump(2) << "\n";
      return ok;
    }
    out << hits.size() << " epimorphism(s) onto " << G->description() << "\n";
    if (qs.group == "dihedral" && !s.has_corners()) {
      out << "dihedral criterion: "
          << (dihedral_criterion(s) ? "satisfied" : "not satisfied") << "\n";
    }
    for (auto const& r : reports) {
      out << "\n" << to_text(r);
    }
    return ok;
  }

  // Maps library errors onto the documented exit codes.
  template <class F>
  int guarded(F&& f, std::ostream& err) {
    try {
      return f();
    } catch (SpecParseError const& ex) {
      err << "parse error: " << ex.what() << "\n";
      return parse_error;
    } catch (InvalidStructure const& ex) {
      err << "invalid structure: " << ex.what() << "\n";
      return invalid_structure;
    } catch (InvalidEpimorphism const& ex) {
      err << "invalid epimorphism: " << ex.what() << "\n";
      return invalid_epimorphism;
    } catch (KernelNotOrientationPreserving const& ex) {
      err << "invalid epimorphism: " << ex.what() << "\n";
      return invalid_epimorphism;
    } catch (TorsionInKernel const& ex) {
      err << "torsion in kernel: " << ex.what() << "\n";
      return torsion;
    } catch (KernelNotTorsionFree const& ex) {
      err << "torsion in kernel: " << ex.what() << "\n";
      return torsion;
    } catch (std::out_of_range const& ex) {
      err << "unknown example: " << ex.what() << "\n";
      return unknown_example;
    } catch (PreconditionViolation const& ex) {
      err << "invalid parameters: " << ex.what() << "\n";
      return invalid_params;
    } catch (SearchSpaceTooLarge const& ex) {
      err << "search space too large: estimate " << ex.estimate()
          << " exceeds bound " << ex.limit() << "\n";
      return search_too_large;
    } catch (InvariantViolation const& ex) {
      err << "invariant trap: " << ex.what() << "\n";
      return invariant_trap;
    } catch (OracleMismatch const& ex) {
      err << "invariant trap: " << ex.what() << "\n";
      return invariant_trap;
    } catch (std::exception const& ex) {
      err << "error: " << ex.what() << "\n";
      return internal;
    }
  }

  inline int run(std::vector<std::string> args, std::ostream& out,
                 std::ostream& err) {
    CLI::App app{"Extended Schottky groups: quotients, symmetry counts, bounds", "schottky"};
    app.require_subcommand(1);
    Options o;

    auto* an = app.add_subcommand("analyze", "analyze a group specification file");
    an->add_option("file", o.file, "spec file (JSON)")->required();
    an->add_flag("--json", o.json, "JSON output");
    an->add_option("--tolerance", o.tolerance, "geometric tolerance");
    an->add_flag("--timing", o.timing, "include wall time in the report");

    auto* ex = app.add_subcommand("example", "reproduce a worked example");
    ex->add_option("id", o.id, "7.1 .. 7.5")->required();
    ex->add_option("--q", o.q);
    ex->add_option("--r", o.r);
    ex->add_option("--n", o.n);
    ex->add_flag("--json", o.json, "JSON output");
    ex->add_option("--tolerance", o.tolerance, "geometric tolerance");
    ex->add_flag("--timing", o.timing, "include wall time in the report");

    auto* se = app.add_subcommand("search", "search for epimorphisms");
    se->add_option("file", o.file, "spec file (JSON); quotient and images are ignored");
    se->add_option("--target", o.target,
                   "dihedral:q | z2xdihedral:r | z2^k:k | cyclic:n | s4 | z2xs4 | z2xa5");
    se->add_flag("--first", o.first, "stop at the first hit");
    se->add_flag("--up-to-automorphism", o.up_to_automorphism,
                 "one hit per automorphism orbit");
    se->add_flag("--json", o.json, "JSON output");
    se->add_option("--genus", o.genus,
                   "impossibility scan: genus of the handlebody (2..4)");
    se->add_option("--profile", o.profile,
                   "impossibility scan: component counts m1,m2,m3");

    std::reverse(args.begin(), args.end());
    try {
      app.parse(args);
    } catch (CLI::CallForHelp const&) {
      out << app.help();
      return ok;
    } catch (CLI::CallForAllHelp const&) {
      out << app.help("", CLI::AppFormatMode::All);
      return ok;
    } catch (CLI::ParseError const& e) {
      err << e.what() << "\n";
      return parse_error;
    }

    return guarded(
        [&] {
          if (an->parsed()) {
            return cmd_analyze(o, out);
          }
          if (ex->parsed()) {
            return cmd_example(o, out);
          }
          return cmd_search(o, out);
        },
        err);
  }

  inline int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(std::move(args), std::cout, std::cerr);
  }

}  // namespace schottky::cli

#endif  // SCHOTTKY_CLI_HPP_
