#ifndef SCHOTTKY_SPEC_FILE_HPP_
#define SCHOTTKY_SPEC_FILE_HPP_

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "finite_groups.hpp"
#include "quotient.hpp"
#include "realize.hpp"
#include "structure.hpp"

// Group specification files (JSON).  See docs/spec-schema.json.

namespace schottky {

  inline constexpr int spec_schema_version = 1;

  struct QuotientSpec {
    std::string                      group;  // dihedral, z2xdihedral, z2^k, ...
    std::map<std::string, long long> params;

    bool operator==(QuotientSpec const&) const = default;
  };

  struct GroupSpecFile {
    int                                schema_version = spec_schema_version;
    std::vector<FactorSpec>            factors;
    std::optional<QuotientSpec>        quotient;
    std::map<std::string, std::string> images;      // generator -> element
    std::vector<std::string>           symmetries;  // designated elements
    std::optional<LayoutHints>         layout;
  };

  namespace detail {

    inline long long as_integer(nlohmann::json const& j, std::string const& what) {
      if (j.is_number_integer()) {
        return j.get<long long>();
      }
      if (j.is_string()) {
        auto const& s = j.get_ref<std::string const&>();
        std::size_t pos = 0;
        try {
          long long v = std::stoll(s, &pos);
          if (pos == s.size()) {
            return v;
          }
        } catch (std::exception const&) {
        }
      }
      throw SpecParseError(what + ": expected an integer");
    }

    inline std::vector<int> int_list(nlohmann::json const& f, char const* key) {
      std::vector<int> out;
      if (!f.contains(key)) {
        return out;
      }
      if (!f[key].is_array()) {
        throw SpecParseError(std::string(key) + ": expected an array");
      }
      for (auto const& x : f[key]) {
        out.push_back(int(as_integer(x, key)));
      }
      return out;
    }

    inline int int_field(nlohmann::json const& f, char const* key) {
      return f.contains(key) ? int(as_integer(f[key], key)) : 0;
    }

    inline FactorKind factor_kind(std::string const& k) {
      for (auto c : {FactorKind::reflection, FactorKind::imaginary_reflection,
                     FactorKind::loxodromic, FactorKind::glide_reflection,
                     FactorKind::type_v}) {
        if (to_string(c) == k) {
          return c;
        }
      }
      throw SpecParseError("unknown factor kind '" + k + "'");
    }

  }  // namespace detail

  inline std::shared_ptr<FiniteGroup const> make_group(QuotientSpec const& q) {
    auto get = [&](char const* k) {
      auto it = q.params.find(k);
      if (it == q.params.end()) {
        throw SpecParseError("quotient " + q.group + " needs parameter " + k);
      }
      if (it->second < 1 || it->second > 128) {
        throw SpecParseError("quotient parameter " + std::string(k)
                             + " out of range");
      }
      return std::size_t(it->second);
    };
    try {
      if (q.group == "dihedral") {
        return std::make_shared<FiniteGroup const>(dihedral(get("q")));
      }
      if (q.group == "z2xdihedral") {
        return std::make_shared<FiniteGroup const>(z2_times_dihedral(get("r")));
      }
      if (q.group == "z2^k") {
        return std::make_shared<FiniteGroup const>(elementary_abelian_2(get("k")));
      }
      if (q.group == "cyclic") {
        return std::make_shared<FiniteGroup const>(cyclic(get("n")));
      }
      if (q.group == "s4") {
        return std::make_shared<FiniteGroup const>(z2_ltimes_a4());
      }
      if (q.group == "z2xs4") {
        return std::make_shared<FiniteGroup const>(z2_ltimes_s4());
      }
      if (q.group == "z2xa5") {
        return std::make_shared<FiniteGroup const>(z2_ltimes_a5());
      }
    } catch (std::invalid_argument const& ex) {
      throw SpecParseError(ex.what());
    }
    throw SpecParseError("unknown quotient group '" + q.group + "'");
  }

  // "dihedral:5", "z2xdihedral:3", "z2^k:3", "cyclic:4", "s4", ...
  inline QuotientSpec parse_target(std::string const& t) {
    QuotientSpec q;
    auto         colon = t.find(':');
    q.group            = t.substr(0, colon);
    if (colon != std::string::npos) {
      std::string key = q.group == "dihedral"      ? "q"
                        : q.group == "z2xdihedral" ? "r"
                        : q.group == "z2^k"        ? "k"
                                                   : "n";
      q.params[key] = detail::as_integer(t.substr(colon + 1), "target");
    }
    return q;
  }

  // Element written as a product of space-separated tokens, each a
  // distinguished generator name (parentheses optional) with optional ^k,
  // or "1".  Full element names as printed by the group are accepted too.
  inline std::uint32_t parse_element(FiniteGroup const& G, std::string s) {
    auto const& names = G.element_names();
    for (std::uint32_t i = 0; i < names.size(); ++i) {
      if (names[i] == s) {
        return i;
      }
    }
    std::istringstream in(s);
    std::string        tok;
    std::uint32_t      r   = 0;
    bool               any = false;
    while (in >> tok) {
      any          = true;
      long long k  = 1;
      auto      hat = tok.find('^');
      if (hat != std::string::npos) {
        k   = detail::as_integer(tok.substr(hat + 1), "exponent in '" + s + "'");
        tok = tok.substr(0, hat);
      }
      if (tok.size() > 2 && tok.front() == '(' && tok.back() == ')') {
        tok = tok.substr(1, tok.size() - 2);
      }
      if (tok == "1") {
        continue;
      }
      auto it = G.distinguished().find(tok);
      if (it == G.distinguished().end()) {
        throw SpecParseError("unknown element '" + tok + "' in "
                             + G.description());
      }
      r = G.mul(r, G.pow(it->second, k));
    }
    if (!any) {
      throw SpecParseError("empty element");
    }
    return r;
  }

  inline GroupSpecFile parse_spec(nlohmann::json const& j) {
    if (!j.is_object()) {
      throw SpecParseError("spec must be a JSON object");
    }
    GroupSpecFile f;
    if (!j.contains("schema_version")) {
      throw SpecParseError("missing schema_version");
    }
    f.schema_version = int(detail::as_integer(j["schema_version"], "schema_version"));
    if (f.schema_version != spec_schema_version) {
      throw SpecParseError("unsupported schema_version "
                           + std::to_string(f.schema_version));
    }
    for (auto it = j.begin(); it != j.end(); ++it) {
      static std::vector<std::string> const known{
          "schema_version", "factors", "quotient", "images", "symmetries",
          "layout", "comment"};
      if (std::find(known.begin(), known.end(), it.key()) == known.end()) {
        throw SpecParseError("unknown key '" + it.key() + "'");
      }
    }
    if (!j.contains("factors") || !j["factors"].is_array()) {
      throw SpecParseError("factors: expected an array");
    }
    for (auto const& fj : j["factors"]) {
      if (!fj.is_object() || !fj.contains("kind") || !fj["kind"].is_string()) {
        throw SpecParseError("each factor needs a string 'kind'");
      }
      FactorSpec fs;
      fs.kind = detail::factor_kind(fj["kind"].get<std::string>());
      if (fj.contains("name")) {
        if (!fj["name"].is_string()) {
          throw SpecParseError("factor name must be a string");
        }
        fs.name = fj["name"].get<std::string>();
      }
      if (fs.kind == FactorKind::type_v) {
        fs.v.elliptic_orders       = detail::int_list(fj, "elliptic_orders");
        fs.v.commuting_involutions = detail::int_field(fj, "commuting_involutions");
        fs.v.imaginary_involutions = detail::int_field(fj, "imaginary_involutions");
        fs.v.corners               = detail::int_list(fj, "corners");
        fs.v.schottky_rank         = detail::int_field(fj, "schottky_rank");
      } else {
        for (char const* k : {"elliptic_orders", "commuting_involutions",
                              "imaginary_involutions", "corners",
                              "schottky_rank"}) {
          if (fj.contains(k)) {
            throw InvalidStructure(std::string(k) + " given for a "
                                   + to_string(fs.kind) + " factor");
          }
        }
      }
      f.factors.push_back(std::move(fs));
    }
    if (j.contains("quotient")) {
      auto const& q = j["quotient"];
      if (!q.is_object() || !q.contains("group") || !q["group"].is_string()) {
        throw SpecParseError("quotient needs a string 'group'");
      }
      QuotientSpec qs;
      qs.group = q["group"].get<std::string>();
      for (auto it = q.begin(); it != q.end(); ++it) {
        if (it.key() != "group") {
          qs.params[it.key()] = detail::as_integer(it.value(), it.key());
        }
      }
      f.quotient = std::move(qs);
    }
    if (j.contains("images")) {
      if (!j["images"].is_object()) {
        throw SpecParseError("images: expected an object");
      }
      for (auto it = j["images"].begin(); it != j["images"].end(); ++it) {
        if (!it.value().is_string()) {
          throw SpecParseError("image of " + it.key() + " must be a string");
        }
        f.images[it.key()] = it.value().get<std::string>();
      }
    }
    if (j.contains("symmetries")) {
      if (!j["symmetries"].is_array()) {
        throw SpecParseError("symmetries: expected an array");
      }
      for (auto const& s : j["symmetries"]) {
        if (!s.is_string()) {
          throw SpecParseError("symmetries: expected strings");
        }
        f.symmetries.push_back(s.get<std::string>());
      }
    }
    if (j.contains("layout")) {
      auto const& l = j["layout"];
      if (!l.is_object()) {
        throw SpecParseError("layout: expected an object");
      }
      LayoutHints h;
      try {
        if (l.contains("positions")) {
          h.positions = l["positions"].get<std::vector<double>>();
        }
        if (l.contains("gap")) {
          h.gap = l["gap"].get<double>();
        }
      } catch (nlohmann::json::exception const& ex) {
        throw SpecParseError(std::string("layout: ") + ex.what());
      }
      f.layout = std::move(h);
    }
    return f;
  }

  inline GroupSpecFile parse_spec_text(std::string const& text) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (nlohmann::json::parse_error const& ex) {
      throw SpecParseError(ex.what());
    }
    return parse_spec(j);
  }

  inline GroupSpecFile load_spec(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw SpecParseError("cannot read " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_spec_text(ss.str());
  }

  // Structure described by the file; throws InvalidStructure.
  inline StructuralGroup spec_structure(GroupSpecFile const& f) {
    return StructuralGroup(f.factors);
  }

  // Epimorphism described by the file.  Missing or extra images are an
  // invalid epimorphism; nothing beyond that is checked here.
  inline Epimorphism spec_epimorphism(GroupSpecFile const&   f,
                                      StructuralGroup const& s) {
    if (!f.quotient) {
      throw SpecParseError("no quotient given");
    }
    auto        G     = make_group(*f.quotient);
    auto const& names = s.presentation().names();
    std::vector<std::uint32_t> img;
    for (auto const& n : names) {
      auto it = f.images.find(n);
      if (it == f.images.end()) {
        throw InvalidEpimorphism("no image for generator " + n);
      }
      img.push_back(parse_element(*G, it->second));
    }
    for (auto const& [k, v] : f.images) {
      if (std::find(names.begin(), names.end(), k) == names.end()) {
        throw InvalidEpimorphism("image given for unknown generator " + k);
      }
    }
    return Epimorphism(s, G, img);
  }

}  // namespace schottky

#endif  // SCHOTTKY_SPEC_FILE_HPP_
