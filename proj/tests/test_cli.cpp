#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "coxforge/cli.hpp"
#include "coxforge/errors.hpp"
#include "coxforge/serialization.hpp"

using namespace coxforge;
using coxforge::json::Json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& body) {
  const std::string path = "coxforge_test_" + name;
  std::ofstream(path) << body;
  return path;
}

}  // namespace

TEST_CASE("graph command prints the intersection data") {
  const auto r = run({"graph", "D4"});
  REQUIRE(r.code == cli::kOk);
  const auto j = Json::parse(r.out);
  CHECK(j.contains("intersection_matrix"));
}

TEST_CASE("unknown cases and bad flags are usage errors") {
  CHECK(run({"graph", "Q7"}).code == cli::kUsage);
  CHECK(run({"graph", "D3"}).code == cli::kUsage);
  CHECK(run({"frobnicate"}).code == cli::kUsage);
  CHECK(run({"graph", "D4", "--format", "yaml"}).code == cli::kUsage);
  CHECK(run({"reduce", "D4"}).code == cli::kUsage);
  CHECK(run({"reduce", "D4", "--degree", "1,2"}).code == cli::kUsage);
}

TEST_CASE("output is byte-stable across runs") {
  for (const auto& cmd : {"invariants", "cox", "report"}) {
    const auto a = run({cmd, "D5"});
    const auto b = run({cmd, "D5"});
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("text format renders the same data") {
  const auto r = run({"graph", "E6", "--format", "text"});
  CHECK(r.code == cli::kOk);
  CHECK(Json::parse(r.out, nullptr, false).is_discarded());
  CHECK(r.out.find("E6") != std::string::npos);
}

TEST_CASE("reduce reports the trace of one degree") {
  const auto r = run({"reduce", "D4", "--degree", "0,-1,0,0"});
  REQUIRE(r.code == cli::kOk);
  const auto j = Json::parse(r.out);
  CHECK(j["terminal"].dump() == "[0,1,0,0]");
  CHECK(j["ok"] == true);
}

TEST_CASE("E6 invariants report the table mismatch") {
  const auto r = run({"invariants", "E6"});
  CHECK(r.code == cli::kMismatch);
}

TEST_CASE("counterexample verify predicts the failure") {
  const auto r = run({"verify", "custom:2,2,3"});
  REQUIRE(r.code == cli::kOk);
  const auto j = Json::parse(r.out);
  CHECK(j["outcome"] == "rule-fails-as-predicted");
  CHECK(j["sections"]["counterexample"]["expected_dim"] == 1);
  CHECK(j["sections"]["counterexample"]["actual_dim"] == 0);
}

TEST_CASE("graph files stand in for case names") {
  const auto path = temp_file("g.json", json::graph_to_json(build_singularity(Family::D, 4)).dump());
  const auto r = run({"graph", path});
  CHECK(r.code == cli::kOk);
  CHECK(r.out == run({"graph", "D4"}).out);
  std::remove(path.c_str());
}

TEST_CASE("config files reject unknown keys and set caps") {
  const auto good = temp_file("good.json", R"({"grid": 1, "cokernel_cap": 30})");
  const auto c = cli::load_config(good);
  CHECK(c.grid == 1);
  CHECK(c.caps.cokernel_cap == 30);
  const auto bad = temp_file("bad.json", R"({"grdi": 1})");
  CHECK_THROWS_AS(cli::load_config(bad), ParameterError);
  CHECK(run({"verify", "A2", "--config", bad}).code == cli::kUsage);
  std::remove(good.c_str());
  std::remove(bad.c_str());
}

TEST_CASE("grid sampling is deterministic and distinct") {
  const auto full = cli::sample_grid(2, 1, 100, 1);
  CHECK(full.size() == 9);
  const auto a = cli::sample_grid(6, 3, 50, 7);
  const auto b = cli::sample_grid(6, 3, 50, 7);
  CHECK(a == b);
  CHECK(std::set<MultiDegree>(a.begin(), a.end()).size() == 50);
  CHECK_THROWS_AS(cli::sample_grid(2, -1, 10, 1), ParameterError);
}

TEST_CASE("small verify run succeeds") {
  const auto r = run({"verify", "A2", "--grid", "1", "--caps", "audit_cells=2"});
  CHECK(r.code == cli::kOk);
  CHECK(Json::parse(r.out)["ok"] == true);
}
