#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(SC_CLI_PATH) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf{};
  RunResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.out.append(buf.data(), n);
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string fixture(const std::string& name) {
  return std::string(SC_FIXTURES_DIR) + "/" + name;
}

std::string temp_file(const std::string& name, const std::string& content = "") {
  std::string path = std::string("/tmp/sc_cli_") + name;
  if (!content.empty()) {
    std::ofstream out(path);
    out << content;
  }
  return path;
}

}  // namespace

TEST_CASE("validate: example one fails rf with a witness, exit 1") {
  RunResult r = run_cli("validate " + fixture("example1.json") + " --axioms cpi,rvt,rf");
  CHECK(r.exit_code == 1);
  json doc = json::parse(r.out);
  CHECK(doc["validation"]["ok"] == true);
  REQUIRE(doc["axioms"].size() == 3);
  CHECK(doc["axioms"][0]["axiom"] == "cpi");
  CHECK(doc["axioms"][0]["holds"] == true);
  CHECK(doc["axioms"][1]["axiom"] == "rvt");
  CHECK(doc["axioms"][1]["holds"] == true);
  CHECK(doc["axioms"][2]["axiom"] == "rf");
  CHECK(doc["axioms"][2]["holds"] == false);
  CHECK(doc["axioms"][2]["witness"]["h"] == "h1");
  CHECK(doc["axioms"][2]["witness"]["h_prime"] == "h2");
}

TEST_CASE("validate: example three fails scpc, exit 1") {
  RunResult r = run_cli("validate " + fixture("example3.json") + " --axioms cpc,scpc");
  CHECK(r.exit_code == 1);
  json doc = json::parse(r.out);
  CHECK(doc["axioms"][0]["holds"] == true);
  CHECK(doc["axioms"][1]["holds"] == false);
}

TEST_CASE("validate: malformed file exits 2") {
  std::string path = temp_file("broken.json", "{\"hospitals\": 3}");
  RunResult r = run_cli("validate " + path);
  CHECK(r.exit_code == 2);
}

TEST_CASE("solve: refusal on example one, success on a singles-only market") {
  RunResult refusal = run_cli("solve " + fixture("example1.json") + " --algorithm alg1");
  CHECK(refusal.exit_code == 1);
  json doc = json::parse(refusal.out);
  CHECK(doc["refused"] == true);

  RunResult sda = run_cli("solve " + fixture("singles_only.json") + " --algorithm sda");
  CHECK(sda.exit_code == 0);
  json out = json::parse(sda.out);
  CHECK(out["refused"] == false);
  CHECK(out["matching"].is_object());
}

TEST_CASE("solve: the rf-compliant fixture verifies stable, exit 0") {
  RunResult r =
      run_cli("solve " + fixture("rf_fixture.json") + " --algorithm alg1 --verify --trace");
  CHECK(r.exit_code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["refused"] == false);
  CHECK(doc["stability"]["status"] == "stable_for_all_responsive_extensions");
  CHECK(doc["matching"]["f"] == "h2");
  CHECK(doc["matching"]["m"] == "h1");
  CHECK(doc["trace"].is_array());
}

TEST_CASE("check: the couple split across hospitals is force-blocked") {
  std::string mu = temp_file(
      "mu1.json", "{\"f\": \"h2\", \"m\": \"h1\", \"s1\": \"h2\", \"s2\": \"h1\"}\n");
  RunResult r = run_cli("check " + fixture("example1.json") + " " + mu);
  CHECK(r.exit_code == 1);
  json doc = json::parse(r.out);
  CHECK(doc["status"] == "unstable_for_all_responsive_extensions");
  bool case3 = false;
  for (const auto& w : doc["witnesses"])
    if (w["kind"] == "couple" && w["h_f"] == "h1" && w["h_m"] == "h1" && w["case"] == "iii")
      case3 = true;
  CHECK(case3);
}

TEST_CASE("enumerate: example one has no stable matching, exit 1") {
  for (const char* sem : {"forced", "rank_lex"}) {
    RunResult r = run_cli("enumerate " + fixture("example1.json") +
                          " --stable-only --semantics " + std::string(sem));
    CHECK(r.exit_code == 1);
    json doc = json::parse(r.out);
    CHECK(doc["count"] == 0);
  }
  RunResult all = run_cli("enumerate " + fixture("example1.json") + " --count-only");
  CHECK(all.exit_code == 0);
  json doc = json::parse(all.out);
  CHECK(doc["count"].get<long long>() > 0);
}

TEST_CASE("enumerate honors the candidate guard, exit 3") {
  RunResult r =
      run_cli("enumerate " + fixture("example3.json") + " --max-candidates 10");
  CHECK(r.exit_code == 3);
}

TEST_CASE("generate feeds the pipeline: emptiness replays through files") {
  std::string out = temp_file("gen_example2.json");
  RunResult gen = run_cli("generate --family example2 -o " + out);
  CHECK(gen.exit_code == 0);
  RunResult enumed = run_cli("enumerate " + out + " --stable-only --jobs 2");
  CHECK(enumed.exit_code == 1);
  json doc = json::parse(enumed.out);
  CHECK(doc["count"] == 0);

  RunResult validated = run_cli("validate " + out);
  CHECK(validated.exit_code == 0);
}

TEST_CASE("generate: counterexample families round-trip through validate") {
  for (const char* family : {"rf_violation", "scpi_violation", "srf_violation"}) {
    std::string out = temp_file(std::string("gen_") + family + ".json");
    RunResult gen = run_cli("generate --family " + std::string(family) + " -o " + out);
    CHECK(gen.exit_code == 0);
    RunResult validated = run_cli("validate " + out);
    CHECK(validated.exit_code == 0);
    RunResult enumed = run_cli("enumerate " + out + " --stable-only --count-only");
    CHECK(enumed.exit_code == 1);
  }
}

TEST_CASE("reports are parseable json on every code path") {
  for (const std::string& args :
       {std::string("validate ") + fixture("example2.json") + " --axioms cpi",
        std::string("solve ") + fixture("example2.json") + " --algorithm dpda",
        std::string("enumerate ") + fixture("example1.json") + " --limit 3"}) {
    RunResult r = run_cli(args);
    CHECK_NOTHROW((void)json::parse(r.out));
  }
}
