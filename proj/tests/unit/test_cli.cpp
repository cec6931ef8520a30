#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "twistbr/cli.hpp"
#include "twistbr/json_io.hpp"

using namespace twistbr;
using json_io::Json;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run_cli(const std::vector<std::string>& args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  int code = cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

Json run_ok(const std::vector<std::string>& args, const std::string& stdin_text = "") {
  auto r = run_cli(args, stdin_text);
  INFO(r.err);
  REQUIRE(r.code == 0);
  CHECK(r.err.empty());
  return Json::parse(r.out);
}

std::string error_kind(const Outcome& r) {
  auto j = Json::parse(r.err);
  REQUIRE(j.contains("error"));
  CHECK(j["error"]["message"].is_string());
  return j["error"]["kind"].get<std::string>();
}

bool has_float(const Json& j) {
  if (j.is_number_float()) return true;
  if (j.is_structured())
    for (const auto& x : j) if (has_float(x)) return true;
  return false;
}

const std::vector<std::string> kGlobalFlags{"--field", "--torsion-bound", "--support"};

}  // namespace

TEST_CASE("documented examples") {
  auto points = run_ok({"classify", "--geometry", "genus0", "--field", "reals"});
  REQUIRE(points.is_array());
  REQUIRE(points.size() == 3);
  std::map<int, int> orbit_sizes;
  for (const auto& p : points) ++orbit_sizes[p["orbit"].get<int>()];
  CHECK(orbit_sizes == std::map<int, int>{{0, 2}, {1, 1}});

  auto index = run_ok({"index-reduction", "--field", "rationals", "--form", "[1,1,1,1,-1]", "--class",
                       "{∞:1/2, 2:1/2}"});
  CHECK(index == Json{{"index", 2}});

  CHECK(run_ok({"quiver", "euler", "--omega", "2"}) == Json::parse("[[1,2],[0,1]]"));
}

TEST_CASE("global flags may follow the subcommand") {
  CHECK(run_ok({"--field", "reals", "classify", "--geometry", "genus0"}) ==
        run_ok({"classify", "--geometry", "genus0", "--field", "reals"}));
}

TEST_CASE("brauer and form subcommands") {
  auto h = run_ok({"--field", "rationals", "brauer", "quaternion", "--a", "-1", "--b", "-1"});
  CHECK(h == Json::parse(R"({"field": "rationals", "invariants": [["inf", 1, 2], ["2", 1, 2]]})"));
  CHECK(run_ok({"--field", "rationals", "brauer", "period", "--class", h.dump()}) == Json{{"period", 2}});
  CHECK(run_ok({"--field", "rationals", "brauer", "index", "--class", "{inf:1/2, 3:1/2}"}) == Json{{"index", 2}});
  auto sum = run_ok({"--field", "rationals", "brauer", "tensor", "--class", "{inf:1/2, 2:1/2}", "--class2",
                     "{2:1/2, 3:1/2}"});
  CHECK(sum == Json::parse(R"({"field": "rationals", "invariants": [["inf", 1, 2], ["3", 1, 2]]})"));
  auto classes = run_ok({"--field", "rationals", "--torsion-bound", "2", "--support", "inf,2,3", "brauer", "enumerate"});
  REQUIRE(classes.is_array());
  CHECK(classes.size() == 4);

  auto diag = run_ok({"--field", "rationals", "form", "diagonalize", "--gram", "[[0,1],[1,0]]"});
  CHECK(diag["form"]["diag"] == Json::parse(R"(["1", "-1"])"));
  auto inv = run_ok({"--field", "rationals", "form", "invariants", "--form", "[1,1,1,1,-1]"});
  CHECK(inv["signed_discriminant"] == "-1");
  CHECK(inv["isotropic"] == true);
  CHECK(run_ok({"--field", "rationals", "form", "isotropic", "--form", "[1,1,1]", "--over", "padic:2"})["isotropic"] ==
        false);
  auto sim = run_ok({"--field", "rationals", "form", "similar", "--form", "[1,1]", "--form2", "[-1,-1]"});
  CHECK(sim["factor"] == "-1");
  auto not_sim = run_ok({"--field", "rationals", "form", "similar", "--form", "[1,1]", "--form2", "[1,-1]"});
  CHECK(not_sim["factor"].is_null());
  CHECK(run_ok({"--field", "rationals", "form", "equivalent", "--form", "[1,-1]", "--form2", "[2,-2]"})["equivalent"] ==
        true);
}

TEST_CASE("stabilizer, orbit and schema subcommands") {
  auto s = run_ok({"--field", "reals", "stabilizer", "--geometry", "genus0", "--class", "{inf:1/2}"});
  CHECK(s["stabilizer"].size() == 2);
  CHECK(s["certified"] == true);
  auto even = run_ok({"--field", "rationals", "--torsion-bound", "2", "--support", "inf,2,3", "stabilizer", "--geometry",
                      "quadric-even:2", "--form", "[1,1,1,1]"});
  CHECK(even["stabilizer"].size() == 2);
  CHECK(even["certified"] == true);
  auto o = run_ok({"--field", "reals", "orbit", "--geometry", "genus0", "--class", "{}"});
  CHECK(o["orbit"].size() == 2);
  auto schema = run_ok({"--field", "reals", "schema", "--geometry", "genus0"});
  CHECK(schema["aut_shape"]["text"] == "Z x (Z x| PGL2)");
  CHECK(schema["torsors"].size() == 2);
  CHECK(run_ok({"--field", "rationals", "schema", "--geometry", "quadric-odd:2"})["stabilizer_rule"] ==
        "always-trivial");
}

TEST_CASE("quiver subcommands") {
  CHECK(run_ok({"quiver", "cartan", "--species",
                R"({"vertices": [{"label_dim": 1}, {"label_dim": 4}], "arrows": [{"src": 0, "dst": 1, "dim": 4}]})"}) ==
        Json::parse("[[1,4],[0,4]]"));
  CHECK(run_ok({"quiver", "projective-space", "--n", "2"}) == Json::parse("[[1,3,6],[0,1,3],[0,0,1]]"));
  auto absent = run_ok({"quiver", "congruent", "--e1", "[[1,2],[0,1]]", "--e2", "[[1,4],[0,4]]"});
  CHECK(absent["status"] == "absent_certified");
  CHECK(absent["transform"].is_null());
  auto found = run_ok({"quiver", "congruent", "--e1", "[[1,2],[0,1]]", "--e2", "[[1,2],[0,1]]"});
  CHECK(found["status"] == "found");
  CHECK(run_ok({"quiver", "reduced-norm", "--quaternion", "[1,1,1,1]"}) == Json{{"reduced_norm", "4"}});
  CHECK(run_ok({"quiver", "norm-image", "--value", "-1"})["contains"] == false);
  CHECK(run_ok({"quiver", "norm-image", "--value", "-1", "--split"})["contains"] == true);
  auto points = run_ok({"classify", "--geometry", "genus0", "--field", "reals"});
  auto k1 = run_ok({"quiver", "k1-distinguish", "--point1", points[0]["point"].dump(), "--point2",
                    points[2]["point"].dump()});
  CHECK(k1["distinction"]["torsion_first"] == Json::parse("[2,2]"));
  CHECK(k1["distinction"]["torsion_second"] == Json::parse("[2,1]"));
  auto same = run_ok({"quiver", "k1-distinguish", "--point1", points[1]["point"].dump(), "--point2",
                      points[1]["point"].dump()});
  CHECK(same["distinction"].is_null());
}

TEST_CASE("payloads from stdin and files") {
  CHECK(run_ok({"quiver", "euler", "--species", "-"},
               R"({"vertices": [{"label_dim": 1}, {"label_dim": 1}], "arrows": [{"src": 0, "dst": 1}]})") ==
        Json::parse("[[1,1],[0,1]]"));
  const std::string path = "twistbr_cli_test_form.json";
  {
    std::ofstream f(path);
    f << "[1, 1, 1, 1, -1]";
  }
  CHECK(run_ok({"--field", "rationals", "index-reduction", "--form", "@" + path, "--class", "{inf:1/2, 2:1/2}"}) ==
        Json{{"index", 2}});
  std::remove(path.c_str());
}

TEST_CASE("exit codes and error objects") {
  auto unknown = run_cli({"frobnicate"});
  CHECK(unknown.code == 2);
  CHECK(error_kind(unknown) == "usage");
  CHECK(unknown.out.empty());

  auto none = run_cli({});
  CHECK(none.code == 2);

  auto malformed = run_cli({"--field", "rationals", "index-reduction", "--form", "[1,1,", "--class", "{}"});
  CHECK(malformed.code == 2);
  CHECK(error_kind(malformed) == "validation");

  auto extra_key = run_cli({"quiver", "euler", "--species", R"({"vertices": [], "arrows": [], "loops": 1})"});
  CHECK(extra_key.code == 2);
  CHECK(error_kind(extra_key) == "validation");

  auto genus1 = run_cli({"--field", "reals", "classify", "--geometry", "genus1"});
  CHECK(genus1.code == 2);
  CHECK(error_kind(genus1) == "unsupported");

  auto no_window = run_cli({"--field", "rationals", "classify", "--geometry", "genus0"});
  CHECK(no_window.code == 2);
  CHECK(error_kind(no_window) == "validation");

  auto no_field = run_cli({"classify", "--geometry", "genus0"});
  CHECK(no_field.code == 2);

  auto reciprocity = run_cli({"--field", "rationals", "brauer", "period", "--class", "{2:1/2}"});
  CHECK(reciprocity.code == 2);
  CHECK(error_kind(reciprocity) == "validation");

  auto short_rank = run_cli({"--field", "rationals", "index-reduction", "--form", "[1,1]", "--class", "{}"});
  CHECK(short_rank.code == 2);

  auto missing = run_cli({"--field", "rationals", "index-reduction", "--form", "[1,1,1]"});
  CHECK(missing.code == 2);
  CHECK(error_kind(missing) == "usage");
}

TEST_CASE("help on every subcommand") {
  const std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> commands{
      {{}, {"--field", "--torsion-bound", "--support"}},
      {{"classify"}, {"--geometry"}},
      {{"stabilizer"}, {"--geometry", "--class", "--form"}},
      {{"orbit"}, {"--geometry", "--class", "--form", "--twist"}},
      {{"index-reduction"}, {"--form", "--class"}},
      {{"form"}, {}},
      {{"form", "invariants"}, {"--form"}},
      {{"form", "diagonalize"}, {"--gram"}},
      {{"form", "equivalent"}, {"--form", "--form2", "--over"}},
      {{"form", "similar"}, {"--form", "--form2", "--over"}},
      {{"form", "isotropic"}, {"--form", "--over"}},
      {{"brauer"}, {}},
      {{"brauer", "quaternion"}, {"--a", "--b"}},
      {{"brauer", "enumerate"}, {}},
      {{"brauer", "period"}, {"--class"}},
      {{"brauer", "index"}, {"--class"}},
      {{"brauer", "tensor"}, {"--class", "--class2"}},
      {{"brauer", "inverse"}, {"--class"}},
      {{"quiver"}, {}},
      {{"quiver", "euler"}, {"--omega", "--species"}},
      {{"quiver", "cartan"}, {"--omega", "--species"}},
      {{"quiver", "projective-space"}, {"--n"}},
      {{"quiver", "congruent"}, {"--e1", "--e2", "--bound"}},
      {{"quiver", "reduced-norm"}, {"--quaternion"}},
      {{"quiver", "norm-image"}, {"--value", "--split"}},
      {{"quiver", "k1-distinguish"}, {"--point1", "--point2"}},
      {{"schema"}, {"--geometry"}},
  };
  for (const auto& [path, flags] : commands) {
    auto args = path;
    args.push_back("--help");
    auto r = run_cli(args);
    INFO(r.out);
    CHECK(r.code == 0);
    for (const auto& f : flags) CHECK(r.out.find(f) != std::string::npos);
    for (const auto& f : kGlobalFlags) CHECK(r.out.find(f) != std::string::npos);
  }
}

TEST_CASE("output is byte-identical across runs") {
  const std::vector<std::vector<std::string>> commands{
      {"classify", "--geometry", "genus0", "--field", "reals"},
      {"--field", "rationals", "--torsion-bound", "2", "--support", "inf,2,3", "classify", "--geometry",
       "quadric-even:2"},
      {"--field", "rationals", "form", "invariants", "--form", R"([3, 5, 7, "-1/2"])"},
      {"--field", "rationals", "schema", "--geometry", "severi-brauer:3"},
      {"--field", "padic:2", "--torsion-bound", "2", "classify", "--geometry", "quadric-odd:1"},
  };
  for (const auto& c : commands) {
    auto first = run_cli(c), second = run_cli(c);
    CHECK(first.code == 0);
    CHECK(first.out == second.out);
    CHECK_FALSE(has_float(Json::parse(first.out)));
  }
}

TEST_CASE("emitted documents parse back") {
  auto h = run_ok({"--field", "rationals", "brauer", "quaternion", "--a", "-1", "--b", "3"});
  CHECK(json_io::to_json(json_io::brauer_from_json(h, std::nullopt)) == h);
  auto inv = run_ok({"--field", "rationals", "form", "invariants", "--form", R"([2, -3, "5/7"])"});
  auto canon = inv["canonical_form"];
  CHECK(json_io::to_json(json_io::form_from_json(canon, std::nullopt)) == canon);
  for (const auto& field : {"reals", "padic:3"}) {
    auto points = run_ok({"--field", field, "--torsion-bound", "2", "classify", "--geometry", "quadric-even:2"});
    for (const auto& p : points) {
      auto parsed = json_io::twist_point_from_json(p["point"]);
      CHECK(json_io::to_json(parsed) == p["point"]);
    }
  }
  auto rational = run_ok({"--field", "rationals", "--torsion-bound", "2", "--support", "inf,2,3", "classify",
                          "--geometry", "quadric-odd:2"});
  for (const auto& p : rational) {
    CHECK(json_io::to_json(json_io::twist_point_from_json(p["point"])) == p["point"]);
    CHECK(p["window"].get<std::string>().find("window") != std::string::npos);
  }
}
