#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string bin() {
  const char* b = std::getenv("SKEWLAB_BIN");
  REQUIRE(b != nullptr);
  return b;
}

std::string data_dir() {
  const char* d = std::getenv("SKEWLAB_DATA");
  REQUIRE(d != nullptr);
  return d;
}

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = bin() + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("check jacobi on builtin instances") {
  CHECK(run("check jacobi --zassenhaus 3 1").exit_code == 0);
  CHECK(run("check jacobi --zassenhaus 7 1").exit_code == 0);
  CHECK(run("check jacobi --file " + data_dir() + "/zassenhaus_3_2.json").exit_code == 0);
}

TEST_CASE("corrupted tables fail with a witness and exit 1") {
  // flip one structure constant of zassenhaus(5,1)
  RunResult emitted = run("corpus emit zassenhaus_5_1");
  REQUIRE(emitted.exit_code == 0);
  std::string path = "/tmp/skewlab_corrupted.json";
  {
    std::string text = emitted.out;
    auto pos = text.find("\"2\"");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 3, "\"1\"");
    std::ofstream out(path);
    out << text;
  }
  RunResult r = run("check jacobi --file " + path);
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("witness") != std::string::npos);
}

TEST_CASE("walrus and torus reports") {
  CHECK(run("check walrus --file " + data_dir() + "/symbol3.json --torus x").exit_code == 0);
  // the rank-0 torus gives six equal (false) conditions: still consistent
  RunResult rank0 = run("check walrus --file " + data_dir() + "/symbol3.json --torus 1");
  CHECK(rank0.exit_code == 0);
  CHECK(rank0.out.find("\"n_equals_rank\": false") != std::string::npos);
  CHECK(run("torus-report --file " + data_dir() + "/symbol3.json --torus x").exit_code == 0);
  CHECK(run("check torus --file " + data_dir() + "/symbol3.json --torus x").exit_code == 0);
  CHECK(run("check galois-roundtrip --file " + data_dir() + "/symbol3.json --torus x").exit_code == 0);
}

TEST_CASE("specialize subcommand") {
  std::string base = "specialize --file " + data_dir() + "/symbol3u.json --gens " + data_dir();
  CHECK(run(base + "/gens_y.json --seeds 20").exit_code == 0);
  RunResult r = run(base + "/gens_span_ux.json --seeds 5 --point u=0");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"preserved\": false") != std::string::npos);
  CHECK(r.out.find("\"certificate\": \"u\"") != std::string::npos);

  // empty generator list is a malformed input
  std::string empty_path = "/tmp/skewlab_empty_gens.json";
  {
    std::ofstream out(empty_path);
    out << "{\"schema\":1, \"kind\":\"subspace\", \"gens\":[]}";
  }
  CHECK(run("specialize --file " + data_dir() + "/symbol3u.json --gens " + empty_path).exit_code == 2);
}

TEST_CASE("envelope subcommand") {
  std::string d = data_dir();
  CHECK(run("envelope --file " + d + "/filiform5.json --ambient " + d + "/gl6_f3.json --degree 4")
            .exit_code == 0);
  CHECK(run("envelope --file " + d + "/onedim.json --ambient " + d + "/gl2_f3.json --degree 6")
            .exit_code == 0);
  // already-restricted algebra: identity embedding, empty chain
  RunResult b = run("envelope --file " + d + "/borel2.json --ambient " + d + "/borel2.json --degree 4");
  CHECK(b.exit_code == 0);
  CHECK(b.out.find("\"chain_length\": 0") != std::string::npos);
  // ambient without pmap is a malformed input
  CHECK(run("envelope --file " + d + "/filiform5.json --ambient " + d + "/filiform5.json").exit_code ==
        2);
}

TEST_CASE("reports are byte-identical across runs") {
  std::string cmd = "specialize --file " + data_dir() + "/symbol3u.json --gens " + data_dir() +
                    "/gens_x.json --seeds 4 --height 2";
  RunResult a = run(cmd);
  RunResult b = run(cmd);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("\"schema\": 1") != std::string::npos);
}

TEST_CASE("shipped corpus files match their generators") {
  for (const char* name : {"symbol3", "symbol3u", "symbol5", "mat2", "zassenhaus_3_1",
                           "zassenhaus_7_1", "filiform5", "onedim", "borel2", "gl2_f3", "gl6_f3",
                           "gens_x", "gens_y", "gens_span_ux"}) {
    RunResult r = run(std::string("corpus emit ") + name);
    REQUIRE(r.exit_code == 0);
    CHECK(r.out == slurp(data_dir() + "/" + name + ".json"));
  }
}

TEST_CASE("input errors exit 2") {
  CHECK(run("check jacobi --file /nonexistent/lie.json").exit_code == 2);
  CHECK(run("corpus emit not_a_thing").exit_code == 2);
  CHECK(run("check walrus --file " + data_dir() + "/symbol3.json --torus y").exit_code == 2);
}
