#include <catch2/catch_amalgamated.hpp>

#include "picobar/json_io.hpp"
#include "picobar/sset.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

using namespace picobar;

#ifndef PICOBAR_FIXTURES_DIR
#define PICOBAR_FIXTURES_DIR "fixtures"
#endif
#ifndef PICOBAR_CLI_PATH
#define PICOBAR_CLI_PATH "picobar_cli"
#endif

namespace {

std::string fixture(const std::string& name) {
  return std::string(PICOBAR_FIXTURES_DIR) + "/" + name;
}

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(PICOBAR_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  RunResult r;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

json load(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  return json::parse(in);
}

}  // namespace

TEST_CASE("bundled fixtures round-trip through the parser") {
  for (const char* name : {"nerve_z2.json", "nerve_z3.json", "nerve_z4.json",
                           "nerve_s3.json", "circle.json", "wedge2.json"}) {
    json doc = load(fixture(name));
    TruncatedSimplicialSet X = parse_simplicial_set(doc);
    REQUIRE(serialize_simplicial_set(X) == doc);
  }
}

TEST_CASE("nerve and circle fixtures parse to the built-in constructions") {
  auto eq = [](const TruncatedSimplicialSet& a, const TruncatedSimplicialSet& b) {
    REQUIRE(a.D == b.D);
    REQUIRE(a.labels == b.labels);
    for (int n = 1; n <= a.D; ++n) REQUIRE(a.faces[n] == b.faces[n]);
  };
  eq(parse_simplicial_set(load(fixture("nerve_z2.json"))),
     nerve_of_group(cyclic_group(2), 4).X);
  eq(parse_simplicial_set(load(fixture("circle.json"))), minimal_circle(2));
}

TEST_CASE("group fixture round-trips") {
  json doc = load(fixture("group_s3.json"));
  FiniteGroup g = parse_group(doc);
  REQUIRE(g.n == 6);
  REQUIRE(serialize_group(g) == doc);
  json bad = doc;
  bad["identity"] = 1;
  REQUIRE_THROWS_AS(parse_group(bad), InputError);
}

TEST_CASE("schema violations carry a path") {
  json doc = load(fixture("circle.json"));
  SECTION("missing truncation") {
    doc.erase("truncation");
    REQUIRE_THROWS_WITH(parse_simplicial_set(doc),
                        Catch::Matchers::ContainsSubstring("truncation"));
  }
  SECTION("unknown base id") {
    doc["faces"]["a"][0]["base"] = "nope";
    REQUIRE_THROWS_WITH(parse_simplicial_set(doc),
                        Catch::Matchers::ContainsSubstring("nope"));
  }
  SECTION("non-canonical degeneracy word") {
    json bad;
    bad["truncation"] = 2;
    bad["simplices"] = {{"0", {"v"}}, {"1", {"a"}}, {"2", {"t"}}};
    bad["faces"] = {
        {"a", {{{"s", json::array()}, {"base", "v"}},
               {{"s", json::array()}, {"base", "v"}}}},
        {"t", {{{"s", {0, 1}}, {"base", "v"}},
               {{"s", {1, 0}}, {"base", "v"}},
               {{"s", {1, 0}}, {"base", "v"}}}}};
    REQUIRE_THROWS_WITH(parse_simplicial_set(bad),
                        Catch::Matchers::ContainsSubstring("decreasing"));
  }
  SECTION("face identity failure names the simplex") {
    json bad = load(fixture("bad_faces.json"));
    REQUIRE_THROWS_WITH(parse_simplicial_set(bad),
                        Catch::Matchers::ContainsSubstring("'t'"));
  }
}

TEST_CASE("module description parsing") {
  ModuleDescription m = parse_module(load(fixture("sign.json")));
  REQUIRE(m.rank == 1);
  REQUIRE(m.action.at("1")[0][0] == "1");
  REQUIRE(m.action.at("{(1)}")[0][0] == "-2");
  json bad = {{"rank", 1}, {"action", {{"1", {{1, 2}}}}}};
  REQUIRE_THROWS_AS(parse_module(bad), InputError);
}

TEST_CASE("loop algebra command reports the two-element group") {
  auto r = run_cli("fundamental-algebra " + fixture("nerve_z2.json") +
                   " --ring z --format json");
  REQUIRE(r.code == 0);
  json rep = json::parse(r.out);
  REQUIRE(rep["normal_form_rank"] == 2);
  REQUIRE(rep["group_likes"]["count"] == 2);
  REQUIRE(rep["group_likes"]["complete"] == true);
  REQUIRE(rep["group_likes"]["table"] ==
          json::array({{0, 1}, {1, 0}}));
  REQUIRE(rep["antipode"] == true);
}

TEST_CASE("module homology command matches the pinned sign values") {
  auto r = run_cli("local-homology " + fixture("nerve_z2.json") + " --module " +
                   fixture("sign.json") + " --degrees 0..2 --format json");
  REQUIRE(r.code == 0);
  json rep = json::parse(r.out);
  REQUIRE(rep["homology"][0]["torsion"] == json::array({"2"}));
  REQUIRE(rep["homology"][1]["free_rank"] == 0);
  REQUIRE(rep["homology"][1]["torsion"] == json::array());
  REQUIRE(rep["homology"][2]["torsion"] == json::array({"2"}));
}

TEST_CASE("homology command respects the trusted window") {
  auto ok = run_cli("homology " + fixture("circle.json") +
                    " --degrees 0..1 --format json");
  REQUIRE(ok.code == 0);
  json rep = json::parse(ok.out);
  REQUIRE(rep["homology"][0]["free_rank"] == 1);
  REQUIRE(rep["homology"][1]["free_rank"] == 1);

  auto bad = run_cli("homology " + fixture("circle.json") +
                     " --degrees 0..5 --format json");
  REQUIRE(bad.code == 3);
  REQUIRE(json::parse(bad.out)["error"]["code"] == 3);
}

TEST_CASE("verify suite passes on every bundled fixture") {
  for (const char* name : {"nerve_z2.json", "nerve_z3.json", "nerve_z4.json",
                           "nerve_s3.json", "circle.json", "wedge2.json"}) {
    auto r = run_cli("verify " + fixture(name) + " --format json");
    INFO(name);
    REQUIRE(r.code == 0);
    REQUIRE(json::parse(r.out)["failures"] == 0);
  }
}

TEST_CASE("input and precondition failures use distinct exit codes") {
  auto bad = run_cli("homology " + fixture("bad_faces.json") + " --format json");
  REQUIRE(bad.code == 2);
  json rep = json::parse(bad.out);
  REQUIRE(rep["error"]["reason"].get<std::string>().find("'t'") !=
          std::string::npos);

  auto inf = run_cli("fundamental-algebra " + fixture("circle.json") +
                     " --format json");
  REQUIRE(inf.code == 3);

  auto missing = run_cli("homology does_not_exist.json --format json");
  REQUIRE(missing.code == 2);

  auto badring = run_cli("homology " + fixture("circle.json") + " --ring fp:9");
  REQUIRE(badring.code == 2);
}

TEST_CASE("rewriting budget can be driven through the environment") {
  std::string cmd = std::string("PICOBAR_MAX_RULES=0 ") + PICOBAR_CLI_PATH +
                    " fundamental-algebra " + fixture("nerve_z2.json") +
                    " --format json 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, got);
  int status = pclose(p);
  REQUIRE(WEXITSTATUS(status) == 3);
  REQUIRE(json::parse(out)["error"]["code"] == 3);
}

TEST_CASE("json reports are byte-for-byte deterministic") {
  for (const std::string args :
       {"fundamental-algebra " + fixture("nerve_s3.json") + " --format json",
        "group-likes " + fixture("circle.json") +
            " --length-bound 3 --format json",
        "universal-cover " + fixture("nerve_z3.json") +
            " --degrees 0..2 --format json"}) {
    auto a = run_cli(args);
    auto b = run_cli(args);
    REQUIRE(a.code == 0);
    REQUIRE(a.out == b.out);
    REQUIRE_FALSE(a.out.empty());
  }
}

TEST_CASE("group-like command reports the free monoid on the circle") {
  auto r = run_cli("group-likes " + fixture("circle.json") +
                   " --length-bound 3 --format json");
  REQUIRE(r.code == 0);
  json rep = json::parse(r.out);
  REQUIRE(rep["group_likes"]["count"] == 4);
  REQUIRE(rep["group_likes"]["complete"] == false);
  REQUIRE(rep["group_likes"]["has_inverses"] == false);
}

TEST_CASE("text output prints homology lines") {
  auto r = run_cli("homology " + fixture("nerve_z2.json") + " --degrees 0..2");
  REQUIRE(r.code == 0);
  REQUIRE(r.out.find("H_0 = Z") != std::string::npos);
  REQUIRE(r.out.find("H_1 = Z/2") != std::string::npos);
  REQUIRE(r.out.find("H_2 = 0") != std::string::npos);
  REQUIRE(r.out.find("trusted degrees 0..3") != std::string::npos);
}

TEST_CASE("universal cover command certifies and reports acyclicity") {
  auto r = run_cli("universal-cover " + fixture("nerve_z2.json") +
                   " --degrees 0..3 --format json");
  REQUIRE(r.code == 0);
  json rep = json::parse(r.out);
  REQUIRE(rep["certified"] == true);
  REQUIRE(rep["homology"][0]["free_rank"] == 1);
  for (int d = 1; d <= 3; ++d) {
    REQUIRE(rep["homology"][d]["free_rank"] == 0);
    REQUIRE(rep["homology"][d]["torsion"] == json::array());
  }
}
