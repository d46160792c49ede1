#include <catch_amalgamated.hpp>

#include <sstream>

#include <schottky/cli.hpp>

using namespace schottky;

namespace {
  std::string data(std::string const& name) {
    return std::string(SCHOTTKY_TEST_DATA) + "/" + name;
  }

  struct Run {
    int         code = 0;
    std::string out, err;
  };

  Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int                code = cli::run(std::move(args), out, err);
    return {code, out.str(), err.str()};
  }
}  // namespace

TEST_CASE("analyze a spec file", "[cli]") {
  auto r = run({"analyze", data("example_7_1.json")});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("kernel rank g = 10") != std::string::npos);

  auto j = run({"analyze", data("example_7_2.json"), "--json"});
  REQUIRE(j.code == 0);
  auto rep = parse_report(j.out);
  CHECK(rep.rank == 2);
  CHECK(rep.group_order == 8);
  REQUIRE(rep.geometry);
  CHECK(rep.geometry->passed);
}

TEST_CASE("reports survive a JSON round trip", "[cli]") {
  for (auto const& [id, params] :
       std::vector<std::pair<std::string, std::map<std::string, long long>>>{
           {"7.1", {{"q", 4}, {"r", 3}}},
           {"7.2", {}},
           {"7.3", {}},
           {"7.4", {{"n", 1}}},
           {"7.5", {{"r", 3}}}}) {
    INFO(id);
    auto r    = build_example_report(make_example(id, params));
    auto text = serialize(r);
    CHECK(parse_report(text) == r);
    CHECK(serialize(parse_report(text)) == text);
  }
}

TEST_CASE("output is deterministic", "[cli]") {
  auto a = run({"example", "7.2", "--json"});
  auto b = run({"example", "7.2", "--json"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  auto c = run({"example", "7.1", "--q", "3", "--r", "4"});
  auto d = run({"example", "7.1", "--q", "3", "--r", "4"});
  CHECK(c.out == d.out);
}

TEST_CASE("timing is opt-in", "[cli]") {
  auto plain = run({"example", "7.1", "--q", "3", "--r", "2", "--json"});
  CHECK(plain.out.find("timing_ms") == std::string::npos);
  auto timed = run({"example", "7.1", "--q", "3", "--r", "2", "--json", "--timing"});
  CHECK(timed.out.find("timing_ms") != std::string::npos);
}

TEST_CASE("exit codes", "[cli]") {
  CHECK(run({"analyze", data("malformed.json")}).code == cli::parse_error);
  CHECK(run({"analyze", data("no_such_file.json")}).code == cli::parse_error);
  CHECK(run({"example", "7.1", "--bogus"}).code == cli::parse_error);
  CHECK(run({"analyze", data("bad_orders.json")}).code == cli::invalid_structure);
  CHECK(run({"analyze", data("bad_relator.json")}).code == cli::invalid_epimorphism);
  CHECK(run({"analyze", data("torsion.json")}).code == cli::torsion);
  CHECK(run({"example", "9.9"}).code == cli::unknown_example);
  CHECK(run({"example", "7.1", "--q", "2", "--r", "1"}).code == cli::invalid_params);
  CHECK(run({"search", data("many_reflections.json"), "--target", "z2xdihedral:12"}).code
        == cli::search_too_large);
  CHECK(run({"--help"}).code == cli::ok);
}

TEST_CASE("error mapping", "[cli]") {
  std::ostringstream err;
  CHECK(cli::guarded([]() -> int { throw InvariantViolation("x"); }, err)
        == cli::invariant_trap);
  CHECK(cli::guarded([]() -> int { throw OracleMismatch("x"); }, err)
        == cli::invariant_trap);
  CHECK(cli::guarded([]() -> int { throw std::runtime_error("x"); }, err)
        == cli::internal);
  CHECK(cli::guarded([]() -> int { throw SpecParseError("x"); }, err)
        == cli::parse_error);
}

TEST_CASE("search subcommand", "[cli]") {
  auto d5 = run({"search", data("two_reflections.json"), "--target", "dihedral:5", "--first"});
  REQUIRE(d5.code == 0);
  CHECK(d5.out.find("dihedral criterion: satisfied") != std::string::npos);

  auto glide = run({"search", data("one_glide.json"), "--target", "dihedral:2"});
  REQUIRE(glide.code == 0);
  CHECK(glide.out.find("dihedral criterion: not satisfied") != std::string::npos);

  auto scan = run({"search", "--genus", "2", "--profile", "2,2,2", "--json"});
  REQUIRE(scan.code == 0);
  CHECK(nlohmann::json::parse(scan.out).at("witnesses").empty());
}

TEST_CASE("spec parsing", "[cli]") {
  auto f = parse_spec_text(R"({"schema_version": 1,
    "factors": [{"kind": "reflection"}, {"kind": "reflection"}],
    "quotient": {"group": "dihedral", "q": 3},
    "images": {"E1": "x", "E2": "y"}})");
  auto e = spec_epimorphism(f, spec_structure(f));
  CHECK(validate(e).ok());
  CHECK_THROWS_AS(parse_spec_text(R"({"schema_version": 2, "factors": []})"),
                  SpecParseError);
  CHECK_THROWS_AS(parse_spec_text(R"({"schema_version": 1, "factors": [], "extra": 1})"),
                  SpecParseError);
  auto G = make_group({"dihedral", {{"q", 4}}});
  auto x = G->element("x").index, y = G->element("y").index;
  CHECK(parse_element(*G, "x y") == G->mul(x, y));
  CHECK(parse_element(*G, "(yx)^2") == G->pow(G->element("yx").index, 2));
  CHECK(parse_element(*G, "1") == 0);
  CHECK_THROWS_AS(parse_element(*G, "w"), SpecParseError);
}
