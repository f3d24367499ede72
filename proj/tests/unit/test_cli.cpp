#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "forge/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int rc;
  std::string out, err;
};

Result forge_run(std::vector<std::string> args, forge::cli::Environment env = {}) {
  std::ostringstream out, err;
  const int rc = forge::cli::run(args, out, err, env);
  return {rc, out.str(), err.str()};
}

class TempDir {
 public:
  explicit TempDir(const std::string& name) : path_(fs::temp_directory_path() / ("forge_cli_" + name)) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string operator/(const std::string& leaf) const { return (path_ / leaf).string(); }

 private:
  fs::path path_;
};

const char* kSpec = R"({
  "num_levels": {"kind": "uniform_int", "params": [4, 6]},
  "nodes_per_level": {"kind": "uniform_int", "params": [2, 4]},
  "in_degree": {"kind": "uniform_int", "params": [1, 2]},
  "out_degree": {"kind": "uniform_int", "params": [1, 3]},
  "algo_mix": {"matmul": 1, "matadd": 1, "gp_op": 1},
  "size": {"kind": "uniform_int", "params": [2, 12]},
  "bytes": {"kind": "uniform_int", "params": [64, 4096]},
  "branch_fraction": 0.5
})";

std::string hash_of(const std::string& path) { return forge::io::sha256_hex(forge::io::read_text(path)); }

}  // namespace

TEST_CASE("usage errors exit 2, help exits 0") {
  CHECK(forge_run({}).rc == 2);
  CHECK(forge_run({"bogus"}).rc == 2);
  CHECK(forge_run({"generate"}).rc == 2);
  CHECK(forge_run({"trace"}).rc == 2);
  CHECK(forge_run({"codesign", "g.json", "--kmax", "zero"}).rc == 2);
  const auto help = forge_run({"--help"});
  CHECK(help.rc == 0);
  CHECK(help.out.find("pipeline") != std::string::npos);
}

TEST_CASE("missing input is a domain error with JSON on stderr") {
  const auto r = forge_run({"clone", "missing.json"});
  CHECK(r.rc == 1);
  const auto err = json::parse(r.err);
  CHECK(err["error"] == "FileNotFound");
  CHECK(err["message"].get<std::string>().find("missing.json") != std::string::npos);
}

TEST_CASE("syntax errors carry a position") {
  TempDir dir("syntax");
  forge::io::write_text(dir / "bad.wppl", "input x\ny = gp_op(x\n");
  const auto r = forge_run({"scan", dir / "bad.wppl"});
  CHECK(r.rc == 1);
  const auto err = json::parse(r.err);
  CHECK(err["error"] == "SyntaxError");
  CHECK(err["line"] == 2);
}

TEST_CASE("generate twice gives identical bytes and a manifest") {
  TempDir dir("gen");
  forge::io::write_text(dir / "spec.json", kSpec);
  REQUIRE(forge_run({"generate", "--spec", dir / "spec.json", "--seed", "1", "--out", dir / "a.json"}).rc == 0);
  REQUIRE(forge_run({"generate", "--spec", dir / "spec.json", "--seed", "1", "--out", dir / "b.json"}).rc == 0);
  CHECK(hash_of(dir / "a.json") == hash_of(dir / "b.json"));
  const auto manifest = forge::io::read_json(dir / "a.json.manifest.json");
  CHECK(manifest["command"] == "generate");
  CHECK(manifest["seed"] == 1);
  CHECK(manifest["outputs"][0]["sha256"] == hash_of(dir / "a.json"));
  CHECK(manifest["inputs"][0]["sha256"] == hash_of(dir / "spec.json"));
}

TEST_CASE("stdout output when --out is omitted") {
  TempDir dir("stdout");
  forge::io::write_text(dir / "spec.json", kSpec);
  const auto r = forge_run({"generate", "--spec", dir / "spec.json", "--seed", "2"});
  CHECK(r.rc == 0);
  CHECK(json::parse(r.out).contains("vertices"));
}

TEST_CASE("pipeline emits every stage and replays byte-identically") {
  TempDir dir("pipe");
  forge::io::write_text(dir / "spec.json", kSpec);
  const auto r = forge_run({"pipeline", "--spec", dir / "spec.json", "--seed", "3", "--out-dir", dir / "run"});
  REQUIRE(r.rc == 0);
  for (const char* f : {"graph.json", "profile.json", "clone.json", "clone_profile.json", "plan.json",
                        "inter_core.csv", "conformance.json", "manifest.json", "report/summary.json",
                        "report/wcss.csv"})
    CHECK(fs::exists(dir / (std::string("run/") + f)));
  const auto replay = forge_run({"replay", dir / "run/manifest.json"});
  CHECK(replay.rc == 0);
  CHECK(json::parse(replay.out)["identical"] == true);

  // Tampering with an output is detected.
  forge::io::write_text(dir / "run/graph.json", "{}");
  const auto graph_hash = hash_of(dir / "run/graph.json");
  CHECK(forge_run({"replay", dir / "run/manifest.json"}).rc == 0);
  CHECK(hash_of(dir / "run/graph.json") != graph_hash);
  forge::io::write_text(dir / "spec.json", std::string(kSpec) + " ");
  const auto changed = forge_run({"replay", dir / "run/manifest.json"});
  CHECK(changed.rc == 1);
  CHECK(json::parse(changed.err)["error"] == "ReplayMismatch");
}

TEST_CASE("batch generation is keyed by seed and independent of worker count") {
  TempDir dir("batch");
  forge::io::write_text(dir / "spec.json", kSpec);
  REQUIRE(forge_run({"generate", "--spec", dir / "spec.json", "--seeds", "4..9", "--out", dir / "one", "--jobs", "1"})
              .rc == 0);
  REQUIRE(forge_run({"generate", "--spec", dir / "spec.json", "--seeds", "4..9", "--out", dir / "many", "--jobs", "4",
                     "--verify", dir / "many/verify.json"})
              .rc == 0);
  for (int s = 4; s <= 9; ++s) {
    const auto name = "graph_" + std::to_string(s) + ".json";
    CHECK(hash_of(dir / ("one/" + name)) == hash_of(dir / ("many/" + name)));
  }
  const auto single = forge_run({"generate", "--spec", dir / "spec.json", "--seed", "6"});
  CHECK(single.out == forge::io::read_text(dir / "many/graph_6.json"));
  CHECK(forge::io::read_json(dir / "many/verify.json").contains("checks"));
  CHECK(forge_run({"generate", "--spec", dir / "spec.json", "--seeds", "9..4", "--out", dir / "x"}).rc == 2);
}

TEST_CASE("bank overrides via flag and environment") {
  TempDir dir("bank");
  forge::io::write_text(dir / "bank.json", R"({"gp_op": {"class": "general-purpose", "cost_kind": "polynomial",
                                               "params": {"cost": [5]}}})");
  forge::io::write_text(dir / "g.json", R"({"vertices": [{"id": "a", "level": 1, "algo": "gp_op", "size": 1}],
                                            "edges": []})");
  const auto plain = json::parse(forge_run({"profile", dir / "g.json"}).out);
  CHECK(plain["computation_table"][0]["complexity"] == 1.0);
  const auto flag = json::parse(forge_run({"--bank", dir / "bank.json", "profile", dir / "g.json"}).out);
  CHECK(flag["computation_table"][0]["complexity"] == 5.0);
  forge::cli::Environment env;
  env.algobank = dir / "bank.json";
  const auto viaenv = json::parse(forge_run({"profile", dir / "g.json"}, env).out);
  CHECK(viaenv["computation_table"][0]["complexity"] == 5.0);
}

TEST_CASE("each subcommand writes its files") {
  TempDir dir("each");
  forge::io::write_text(dir / "spec.json", kSpec);
  forge::io::write_text(dir / "prog.wppl", "input a [bytes=64]\nb = matmul(a, a) [size=4, bytes=128]\nc = matadd(b, b) [size=4]\n");
  REQUIRE(forge_run({"generate", "--spec", dir / "spec.json", "--seed", "5", "--out", dir / "g.json"}).rc == 0);
  CHECK(forge_run({"profile", dir / "g.json", "--out", dir / "p.json", "--table-csv", dir / "t.csv", "--matrix-csv",
                   dir / "m.csv"})
            .rc == 0);
  CHECK(forge_run({"scan", dir / "prog.wppl", "--out", dir / "s.json"}).rc == 0);
  CHECK(forge_run({"extract", dir / "g.json", "--out", dir / "e.json"}).rc == 0);
  CHECK(forge_run({"clone", dir / "e.json", "--seed", "2", "--source", dir / "g.json", "--out", dir / "c.json"}).rc ==
        0);
  CHECK(forge_run({"codesign", dir / "g.json", "--kmax", "4", "--out", dir / "plan.json", "--csv", dir / "ic.csv"})
            .rc == 0);
  CHECK(forge_run({"trace", "--algo", "loop_random", "--size", "200", "--seed", "1", "--out", dir / "tr.json"}).rc ==
        0);
  CHECK(forge_run({"report", "--graph", dir / "g.json", "--plan", dir / "plan.json", "--trace", dir / "tr.json",
                   "--out-dir", dir / "rep"})
            .rc == 0);
  for (const char* f : {"p.json", "t.csv", "m.csv", "s.json", "e.json", "c.json", "plan.json", "ic.csv", "tr.json",
                        "rep/summary.json", "rep/reuse.csv", "rep/intensity.csv"})
    CHECK(fs::exists(dir / f));
  const auto trace = forge::io::read_json(dir / "tr.json");
  CHECK(trace["references"] == trace["addresses"].size());
}

TEST_CASE("schema errors") {
  TempDir dir("schema");
  forge::io::write_text(dir / "g.json", R"({"vertices": "nope"})");
  const auto r = forge_run({"profile", dir / "g.json"});
  CHECK(r.rc == 1);
  CHECK(json::parse(r.err)["error"] == "SchemaMismatch");
  forge::io::write_text(dir / "t.json", R"({"addresses": []})");
  CHECK(json::parse(forge_run({"report", "--trace", dir / "t.json"}).err)["error"] == "SchemaMismatch");
}
