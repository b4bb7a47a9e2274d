#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "nswvc/reduction.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = NSWVC_CLI_PATH;

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() /
           ("nswvc_cli_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

int run(const std::string& args) {
  int status = std::system((kCli + " " + args + " >/dev/null 2>&1").c_str());
  return WEXITSTATUS(status);
}

std::string run_capture(const std::string& args, int& exit_code) {
  TempDir tmp;  // keep capture files out of the caller's dir
  auto out = tmp.file("stdout.txt");
  int status = std::system((kCli + " " + args + " 2>/dev/null > " + out).c_str());
  exit_code = WEXITSTATUS(status);
  std::ifstream in(out);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("pipeline: generate -> reduce -> solve -> verify -> extract-vc") {
  TempDir tmp;
  auto graph = tmp.file("k4.graph");
  auto inst = tmp.file("k4.inst");
  auto alloc = tmp.file("k4.alloc");
  auto report = tmp.file("k4.report.json");

  REQUIRE(run("generate --family k4 -o " + graph) == 0);
  REQUIRE(run("reduce " + graph + " -c 1 --epsilon 1/100 -o " + inst) == 0);
  REQUIRE(run("solve " + inst + " --method structured -o " + alloc) == 0);
  CHECK(run("solve " + inst + " --method bruteforce -o " + tmp.file("bf.alloc")) == 0);
  CHECK(run("verify " + inst + " " + alloc + " -o " + report) == 0);

  int code = 0;
  CHECK(run_capture("extract-vc " + inst + " " + alloc, code) == "0 1 2\n");
  CHECK(code == 0);

  auto j = nswvc::ordered_json::parse(slurp(report));
  CHECK(j["c_approximate"] == true);
  CHECK(j["is_minimum"] == true);
  CHECK(j["theorem_holds"] == true);
}

TEST_CASE("pipeline succeeds for every built-in family") {
  for (const std::string fam : {"k33", "prism", "petersen"}) {
    TempDir tmp;
    auto graph = tmp.file("g.graph");
    auto inst = tmp.file("g.inst");
    auto alloc = tmp.file("g.alloc");
    REQUIRE(run("generate --family " + fam + " -o " + graph) == 0);
    REQUIRE(run("reduce " + graph + " -c 2 -o " + inst) == 0);
    REQUIRE(run("solve " + inst + " -o " + alloc) == 0);
    CHECK(run("verify " + inst + " " + alloc + " -o " + tmp.file("r.json")) == 0);
    int code = 0;
    auto cover = run_capture("extract-vc " + inst + " " + alloc, code);
    CHECK(code == 0);
    CHECK(!cover.empty());
  }
}

TEST_CASE("outputs are byte-identical across repeated runs") {
  TempDir tmp;
  auto g1 = tmp.file("a.graph"), g2 = tmp.file("b.graph");
  REQUIRE(run("generate --family random --n 10 --seed 7 -o " + g1) == 0);
  REQUIRE(run("generate --family random --n 10 --seed 7 -o " + g2) == 0);
  CHECK(slurp(g1) == slurp(g2));

  auto i1 = tmp.file("a.inst"), i2 = tmp.file("b.inst");
  REQUIRE(run("reduce " + g1 + " -c 1 -o " + i1) == 0);
  REQUIRE(run("reduce " + g2 + " -c 1 -o " + i2) == 0);
  CHECK(slurp(i1) == slurp(i2));

  auto a1 = tmp.file("a.alloc"), a2 = tmp.file("b.alloc");
  REQUIRE(run("solve " + i1 + " -o " + a1) == 0);
  REQUIRE(run("solve " + i2 + " -o " + a2) == 0);
  CHECK(slurp(a1) == slurp(a2));
}

TEST_CASE("exit code 2 for bad input") {
  TempDir tmp;
  CHECK(run("generate --family random --n 9 --seed 1") == 2);
  CHECK(run("generate --family wheel") == 2);

  auto graph = tmp.file("k4.graph");
  REQUIRE(run("generate --family k4 -o " + graph) == 0);
  CHECK(run("reduce " + graph + " -c 1/2") == 2);        // c < 1
  CHECK(run("reduce " + graph + " --epsilon 0") == 2);
  CHECK(run("reduce " + tmp.file("missing.graph")) == 2);

  auto inst = tmp.file("k4.inst");
  REQUIRE(run("reduce " + graph + " -o " + inst) == 0);
  auto bad_alloc = tmp.file("bad.alloc");
  std::ofstream(bad_alloc) << "{\"format\":1,\"edge_bundles\":[[0],[3],[6],[9],[2],[5]],"
                              "\"greedy_bundle\":[]}";
  CHECK(run("verify " + inst + " " + bad_alloc) == 2);  // not a partition
  // ... unless completion is requested explicitly
  CHECK(run("verify " + inst + " " + bad_alloc + " --complete-to-greedy") == 0);
}

TEST_CASE("exit code 1 for checked-and-falsified") {
  TempDir tmp;
  auto graph = tmp.file("k4.graph");
  auto inst = tmp.file("k4.inst");
  REQUIRE(run("generate --family k4 -o " + graph) == 0);
  REQUIRE(run("reduce " + graph + " -c 1 -o " + inst) == 0);

  // full-cover allocation: positive but not c-approximate
  auto full = tmp.file("full.alloc");
  std::ofstream(full) << "{\"format\":1,\"edge_bundles\":[[0,3],[1,6],[2,9],[4,7],"
                         "[5,10],[8,11]],\"greedy_bundle\":[]}";
  CHECK(run("verify " + inst + " " + full) == 0);  // theorem vacuously holds
  CHECK(run("extract-vc " + inst + " " + full) == 1);
}

TEST_CASE("check subcommand") {
  TempDir tmp;
  auto graph = tmp.file("k4.graph");
  auto inst = tmp.file("k4.inst");
  REQUIRE(run("generate --family k4 -o " + graph) == 0);
  REQUIRE(run("reduce " + graph + " -c 1 -o " + inst) == 0);

  CHECK(run("check " + inst + " --mode supermodular --budget 2000 --seed 3") == 0);
  CHECK(run("check " + inst + " --mode classes --seed 3") == 0);
  CHECK(run("check " + inst + " --mode lemmas --trials 50 --seed 1") == 0);
  CHECK(run("check " + inst + " --mode bogus") == 2);

  auto pet_g = tmp.file("pet.graph");
  auto pet_i = tmp.file("pet.inst");
  REQUIRE(run("generate --family petersen -o " + pet_g) == 0);
  REQUIRE(run("reduce " + pet_g + " -o " + pet_i) == 0);
  CHECK(run("check " + pet_i + " --mode supermodular --exhaustive") == 2);
}

TEST_CASE("exit code 3 when the solver budget is exceeded") {
  TempDir tmp;
  auto graph = tmp.file("big.graph");
  auto inst = tmp.file("big.inst");
  REQUIRE(run("generate --family random --n 12 --seed 4 -o " + graph) == 0);
  REQUIRE(run("reduce " + graph + " -o " + inst) == 0);
  CHECK(run("solve " + inst + " --method bruteforce") == 3);
}

TEST_CASE("improve subcommand applies the improving move") {
  TempDir tmp;
  auto graph = tmp.file("k4.graph");
  auto inst = tmp.file("k4.inst");
  REQUIRE(run("generate --family k4 -o " + graph) == 0);
  REQUIRE(run("reduce " + graph + " -c 1 -o " + inst) == 0);
  auto full = tmp.file("full.alloc");
  std::ofstream(full) << "{\"format\":1,\"edge_bundles\":[[0,3],[1,6],[2,9],[4,7],"
                         "[5,10],[8,11]],\"greedy_bundle\":[]}";
  auto improved = tmp.file("improved.alloc");
  CHECK(run("improve " + inst + " " + full + " --vbar 3 -o " + improved) == 0);
  auto j = nswvc::ordered_json::parse(slurp(improved));
  CHECK(j["greedy_bundle"].size() == 3);  // vertex 3's triple moved to g
  CHECK(run("improve " + inst + " " + improved + " --vbar 2") == 2);  // not removable
}
