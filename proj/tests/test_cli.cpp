#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <catch2/catch_amalgamated.hpp>
#include <json.hpp>

#include "fixtures.hpp"

// Drives the installed binary end to end against the corpus.

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr, merged
};

std::string cli_path() {
  if (const char* env = std::getenv("COLLAGE_CLI")) return env;
  return "./collage";
}

RunResult run(const std::string& args) {
  std::string cmd = cli_path() + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  RunResult r;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof(buf), pipe)) r.output.append(buf, n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string corpus(const std::string& name) { return fixtures::corpus_dir() + "/" + name; }

}  // namespace

TEST_CASE("check") {
  SECTION("valid corpus files pass") {
    RunResult r = run("check " + corpus("shared_state.collage") + " " + corpus("comb.collage"));
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("SharedState: ok") != std::string::npos);
  }
  SECTION("the semaphore race composite is rejected as ill-typed") {
    RunResult r = run("check " + corpus("semaphore.collage"));
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("central") != std::string::npos);
  }
  SECTION("malformed input exits 2") {
    std::string path = "/tmp/collage_cli_broken.collage";
    std::ofstream(path) << "bimodular theory Broken { left objects ";
    RunResult r = run("check " + path);
    CHECK(r.exit_code == 2);
  }
}

TEST_CASE("normalize") {
  RunResult a = run("normalize " + corpus("shared_state.collage") + " race");
  RunResult b = run("normalize " + corpus("shared_state.collage") + " race");
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  nlohmann::json j = nlohmann::json::parse(a.output);
  CHECK(j.contains("domain"));
  CHECK(j.at("layers").size() == 4);
  SECTION("unknown diagram exits 2") {
    CHECK(run("normalize " + corpus("shared_state.collage") + " ghost").exit_code == 2);
  }
}

TEST_CASE("eq") {
  std::string file = corpus("shared_state.collage");
  SECTION("race equals done, trace written") {
    std::string trace = "/tmp/collage_cli_trace.json";
    RunResult r = run("eq " + file + " race done --trace " + trace);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("equal") == 0);
    std::ifstream in(trace);
    REQUIRE(in.good());
    nlohmann::json steps = nlohmann::json::parse(in);
    CHECK(steps.is_array());
    CHECK_FALSE(steps.empty());
    CHECK(steps[0].contains("rule"));
  }
  SECTION("zig-zag equals identity via the snakes") {
    RunResult r = run("eq " + corpus("functor_box.collage") + " zigzag_dn id_dn");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("snake_F_dn") != std::string::npos);
  }
  SECTION("depth 0 is unknown, exit 3") {
    CHECK(run("eq " + file + " race done --depth 0").exit_code == 3);
  }
  SECTION("COLLAGE_DEPTH overrides the default depth") {
    RunResult r = run("eq " + file + " race done");
    CHECK(r.exit_code == 0);
    std::string cmd = "COLLAGE_DEPTH=0 " + cli_path() + " eq " + file + " race done 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe);
    char buf[256];
    while (fread(buf, 1, sizeof(buf), pipe)) {
    }
    int status = pclose(pipe);
    CHECK(WEXITSTATUS(status) == 3);
  }
  SECTION("unknown names exit 2") {
    CHECK(run("eq " + file + " race ghost").exit_code == 2);
  }
}

TEST_CASE("eval") {
  SECTION("the race composite cancels in Z/2") {
    RunResult r = run("eval " + corpus("shared_state.collage") + " race --model Z2All");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "0\n");
  }
  SECTION("json output") {
    RunResult r = run("eval " + corpus("shared_state.collage") + " race --model Z3Mix --json");
    CHECK(r.exit_code == 0);
    nlohmann::json j = nlohmann::json::parse(r.output);
    CHECK(j.at("result") == "0");
    CHECK(j.at("model") == "z3");
  }
  SECTION("direct and internal comb evaluations agree") {
    RunResult d = run("eval " + corpus("comb.collage") + " direct --model ChainComb");
    RunResult i = run("eval " + corpus("comb.collage") + " comb --model ChainComb");
    CHECK(d.exit_code == 0);
    CHECK(d.output == i.output);
    CHECK(d.output == "h3_0\n");
  }
  SECTION("user-defined table model") {
    RunResult r = run("eval " + corpus("models.collage") + " twice --model FlipToggle");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "stay\n");
  }
  SECTION("missing interpretation entries exit 2") {
    std::string path = "/tmp/collage_cli_gap.collage";
    std::ofstream(path) << "monoidal theory Gap {\n  objects: W;\n  edge t : W -> W;\n"
                           "  diagram once : t;\n}\n"
                           "interpretation NoEdge for Gap { model: z2; object W = *; }\n";
    RunResult r = run("eval " + path + " once --model NoEdge");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("missing interpretation entry") != std::string::npos);
  }
}

TEST_CASE("render") {
  std::string file = corpus("functor_box.collage");
  SECTION("svg output and determinism") {
    RunResult a = run("render " + file + " through --format svg");
    RunResult b = run("render " + file + " through --format svg");
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    CHECK(a.output.find("<svg") == 0);
  }
  SECTION("dot and tikz formats") {
    CHECK(run("render " + file + " through --format dot").output.find("digraph") == 0);
    CHECK(run("render " + file + " through --format tikz").output.find("\\begin") == 0);
  }
  SECTION("unknown format exits 2") {
    CHECK(run("render " + file + " through --format png").exit_code == 2);
  }
}

TEST_CASE("oracle") {
  SECTION("hom-count agrees") {
    RunResult r = run("oracle hom-count");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("agree") != std::string::npos);
  }
  SECTION("coend-closure requires a seed") {
    CHECK(run("oracle coend-closure --instances 2").exit_code == 2);
    CHECK(run("oracle coend-closure --seed 7 --instances 3").exit_code == 0);
  }
  SECTION("unknown subtask exits 2") {
    CHECK(run("oracle warp").exit_code == 2);
  }
}

TEST_CASE("examples prints the corpus index") {
  RunResult r = run("examples");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("shared_state.collage: SharedState") != std::string::npos);
  CHECK(r.output.find("race_trace.json") != std::string::npos);
}
