#include "doctest.h"
#include "support.hpp"

#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace vpc;
using namespace vpc::test;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string &name, const std::string &content) {
  auto p = std::filesystem::temp_directory_path() / ("vpcb_test_" + name);
  std::ofstream(p) << content;
  return p.string();
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("group commands") {
  CHECK(run_cli({"group", "hirsch", data_path("dinf")}).json()["hirsch"] == 1);
  Result z2 = run_cli({"group", "comm", data_path("z2"), "--subgroup", "(1,1)"});
  CHECK(z2.code == 0);
  CHECK(z2.json()["whole_group"] == true);
  Json pm = run_cli({"group", "comm", data_path("pm"), "--subgroup", "(1,1)"}).json();
  CHECK(pm["whole_group"] == false);
  CHECK(pm["translations_only"] == true);
  CHECK(pm["index_in_group"] == 2);
  Json inter =
      run_cli({"group", "intersect", data_path("z2"), "--subgroup", "(2,0);(0,1)", "--other", "(1,1)"}).json();
  CHECK(inter.dump().find("(2,2)") != std::string::npos);
  CHECK(run_cli({"group", "info", data_path("p4")}).code == 0);
  CHECK(run_cli({"group", "normalizer", data_path("pm"), "--subgroup", "(1,0)"}).code == 0);
}

TEST_CASE("class enumeration") {
  CHECK(run_cli({"classes", data_path("z2"), "-r", "1", "--bound", "1"}).json()["count"] == 4);
  CHECK(run_cli({"classes", data_path("z2"), "-r", "2", "--bound", "1"}).json()["count"] == 1);
  CHECK(run_cli({"classes", data_path("p4"), "-r", "1", "--bound", "1"}).json()["count"] == 2);
}

TEST_CASE("model build") {
  Json f = run_cli({"model", "build", "farrell-z2", "--slice", "4"}).json();
  CHECK(f["recipe"]["dimension"] == 3);
  Json p = run_cli({"model", "build", "point", "--group", data_path("z2"), "--family", "all"}).json();
  CHECK(p["recipe"]["dimension"] == 0);
  CHECK(run_cli({"model", "build", "point", "--group", data_path("z2"), "--family", "fin"}).code == 1);
  CHECK(run_cli({"model", "build", "nonsense"}).code == 2);
}

TEST_CASE("model verify and cohomology") {
  Result built = run_cli({"model", "build", "rn"});
  REQUIRE(built.code == 0);
  std::string torus = temp_file("torus.json", built.out);
  Result v = run_cli({"model", "verify", torus, "--radius", "3"});
  CHECK(v.code == 0);
  CHECK(v.json()["pass"] == true);
  Json c = run_cli({"cohomology", torus}).json();
  CHECK(c["pass"] == true);
  std::vector<std::size_t> ranks;
  for (const auto &d : c["cohomology"]) ranks.push_back(d["rank"].get<std::size_t>());
  CHECK(ranks == std::vector<std::size_t>{1, 2, 1});

  std::string line = temp_file("line.json", run_cli({"model", "build", "dinf-line"}).out);
  Json lc = run_cli({"cohomology", line}).json();
  CHECK(lc["pass"] == true);
  CHECK(lc["cohomology"][0]["rank"] == 1);
  CHECK(lc["cohomology"][1]["rank"] == 0);
}

TEST_CASE("verification failure exits with 4") {
  Json file = Json::parse(run_cli({"model", "build", "rn"}).out);
  file.erase("build");
  file["recipe"]["family"] = Json{{"kind", "hr"}, {"r", 1}};
  std::string bad = temp_file("bad.json", file.dump());
  CHECK(run_cli({"model", "verify", bad, "--radius", "2"}).code == cli::VerifyFail);
}

TEST_CASE("bound command") {
  auto sandwich = [](const std::vector<std::string> &args) { return run_cli(args).json()["sandwich"]; };
  CHECK(sandwich({"bound", data_path("z2"), "h1", "gd"}) == Json::parse("[1,3]"));
  CHECK(sandwich({"bound", data_path("z2"), "h2", "gd"}) == Json::parse("[0,0]"));
  CHECK(sandwich({"bound", data_path("heis"), "h1", "cd"}) == Json::parse("[2,4]"));
  CHECK(sandwich({"bound", data_path("locally_h5"), "h2", "gd"}) == Json::parse("[3,8]"));
  Json traced = run_cli({"bound", data_path("z2"), "h1", "gd", "--trace"}).json();
  CHECK(traced.contains("upper_tree"));
  Json partial = run_cli({"bound", data_path("z2"), "h1", "gd", "--depth", "1"}).json();
  CHECK(partial["partial"] == true);
  CHECK(run_cli({"bound", data_path("z2"), "h1", "xd"}).code == cli::Parse);
}

TEST_CASE("exit codes") {
  CHECK(run_cli({}).code == cli::Parse);
  CHECK(run_cli({"group", "hirsch", "/nonexistent.json"}).code == cli::Parse);
  CHECK(run_cli({"classes", data_path("heis"), "-r", "1"}).code == cli::Unsupported);
  CHECK(run_cli({"group", "comm", data_path("heis"), "--subgroup", "(1,0,0)"}).code == cli::Unsupported);
  CHECK(run_cli({"bound", data_path("undeclared"), "h1", "gd"}).code == cli::Other);
  Result bad = run_cli({"classes", data_path("z2"), "-r", "1", "--bound", "0"});
  CHECK(bad.code != 0);
  CHECK_FALSE(bad.err.empty());
}

TEST_CASE("output is deterministic and re-parses") {
  std::vector<std::vector<std::string>> commands{
      {"classes", data_path("p4"), "-r", "1", "--bound", "2"},
      {"bound", data_path("heis"), "h1", "cd", "--trace"},
      {"model", "build", "lw-vc", "--group", data_path("dinf")},
      {"group", "info", data_path("p2xz")},
  };
  for (const auto &c : commands) {
    Result a = run_cli(c), b = run_cli(c);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    Json j = a.json();
    CHECK(Json::parse(j.dump(2)) == j);
  }
}

TEST_CASE("text output renders the same document") {
  Result t = run_cli({"group", "hirsch", data_path("dinf"), "--format", "text"});
  CHECK(t.code == 0);
  CHECK(t.out == cli::render_text(run_cli({"group", "hirsch", data_path("dinf")}).json()));
  CHECK(t.out.find("hirsch: 1") != std::string::npos);
}
}
