#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "vcdlab/commands.hpp"
#include "vcdlab/io.hpp"

using nlohmann::json;

namespace {

struct RunOutput {
  int exit_code;
  std::string out;
};

RunOutput run_cli(const std::string& args) {
  const std::string cmd = std::string(VCDLAB_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (fgets(buf.data(), static_cast<int>(buf.size()), pipe)) out += buf.data();
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("gen writes loadable model files with designated sets") {
  const auto grid = temp_file("vcdlab_cli_grid.json");
  auto r = run_cli("gen grid --n 2 --k 3 -o " + grid.string());
  CHECK(r.exit_code == 0);
  const vcdlab::ModelFile m = vcdlab::read_model_file(grid.string());
  CHECK(m.structure->universe_size() == 27);
  CHECK(m.sets.count("B") == 1);
  CHECK(m.sets.count("A") == 1);

  const auto hyper = temp_file("vcdlab_cli_hyper.json");
  r = run_cli("gen hypercube --d 2 -o " + hyper.string());
  CHECK(r.exit_code == 0);
  CHECK(vcdlab::read_model_file(hyper.string()).structure->universe_size() == 14);

  const auto rnd = temp_file("vcdlab_cli_rnd.json");
  r = run_cli("gen random --width 3 --size 12 --seed 7 -o " + rnd.string());
  CHECK(r.exit_code == 0);
  CHECK(vcdlab::read_model_file(rnd.string()).structure->universe_size() == 12);
}

TEST_CASE("analyze reports the requested measurements") {
  const auto grid = temp_file("vcdlab_cli_grid13.json");
  REQUIRE(run_cli("gen grid --n 1 --k 3 -o " + grid.string()).exit_code == 0);
  auto r = run_cli("analyze " + grid.string() + " --width");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("width: 3") != std::string::npos);

  const auto hyper = temp_file("vcdlab_cli_h1.json");
  REQUIRE(run_cli("gen hypercube --d 1 -o " + hyper.string()).exit_code == 0);
  r = run_cli("analyze " + hyper.string() + " --zerotypes");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("2 zero-parameter type classes") != std::string::npos);

  const auto chain = temp_file("vcdlab_cli_chain.json");
  REQUIRE(run_cli("gen random --width 1 --size 5 --seed 3 -o " + chain.string()).exit_code == 0);
  r = run_cli("analyze " + chain.string() + " --breadth");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("breadth of the down-set family: 1") != std::string::npos);
}

TEST_CASE("definability reports findings as machine-readable certificates") {
  const auto hyper = temp_file("vcdlab_cli_h1b.json");
  REQUIRE(run_cli("gen hypercube --d 1 -o " + hyper.string()).exit_code == 0);
  auto r = run_cli("definability " + hyper.string() +
                   " --delta \"x < y\" --B set:H --d 1 --type-of p_pp --json");
  CHECK(r.exit_code == 0);
  const json rep = json::parse(r.out);
  CHECK(rep.at("findings").at("scheme_lower_bound") == "infinite");
  const auto& type0 = rep.at("findings").at("types").at(0);
  CHECK(type0.at("def_tuples").empty());
  CHECK(type0.contains("refutation"));  // replayable permutation certificate
}

TEST_CASE("identical inputs reproduce identical findings") {
  const auto grid = temp_file("vcdlab_cli_grid_det.json");
  REQUIRE(run_cli("gen grid --n 2 --k 3 -o " + grid.string()).exit_code == 0);
  const std::string args = "definability " + grid.string() + " --delta \"y < x\" --d 1 --json";
  const json a = json::parse(run_cli(args).out);
  const json b = json::parse(run_cli(args).out);
  CHECK(a.at("findings") == b.at("findings"));
  CHECK(a.at("inputs") == b.at("inputs"));
  // worker count never changes the findings
  const json c = json::parse(run_cli(args + " --jobs 4").out);
  CHECK(a.at("findings") == c.at("findings"));
}

TEST_CASE("an empty parameter set leaves the single vacuous type with bound 1") {
  const auto chain = temp_file("vcdlab_cli_chain_none.json");
  REQUIRE(run_cli("gen random --width 1 --size 5 --seed 3 -o " + chain.string()).exit_code == 0);
  const auto r = run_cli("definability " + chain.string() + " --B none --d 1 --json");
  CHECK(r.exit_code == 0);
  const json rep = json::parse(r.out);
  CHECK(rep.at("findings").at("types").size() == 1);
  CHECK(rep.at("findings").at("scheme_lower_bound") == 1);
}

TEST_CASE("the designated-set restriction reproduces the scheme growth quantity") {
  const auto grid = temp_file("vcdlab_cli_grid_over.json");
  REQUIRE(run_cli("gen grid --n 2 --k 3 -o " + grid.string()).exit_code == 0);
  const auto r = run_cli("definability " + grid.string() +
                         " --delta \"y < x\" --B set:B --over set:A --d 1 --json");
  CHECK(r.exit_code == 0);
  const json rep = json::parse(r.out);
  CHECK(rep.at("findings").at("scheme_lower_bound") == 3);  // 2n-1 at n=2
  CHECK(rep.at("findings").at("types").size() == 3);
}

TEST_CASE("lemma31 subcommand produces a replayed definition") {
  const auto chain = temp_file("vcdlab_cli_chain4.json");
  REQUIRE(run_cli("gen random --width 1 --size 4 --seed 7 -o " + chain.string()).exit_code == 0);
  auto r = run_cli("lemma31 " + chain.string() +
                   " --psi \"x = @2\" --phi \"y < x\" --c 2 --B all --d 0 --json");
  CHECK(r.exit_code == 0);
  const json rep = json::parse(r.out);
  CHECK(rep.at("findings").at("param_count") == 1);  // just the constant inside psi
  CHECK(rep.at("findings").at("verdicts") == json::array({true, true, false, false}));

  // boundary: |psi(M)| = 2^{d+1} is rejected with the bound in the message
  r = run_cli("lemma31 " + chain.string() +
              " --psi \"x < @2\" --phi \"y < x\" --c 0 --B all --d 0");
  CHECK(r.exit_code == 2);
  CHECK(r.out.find("exceeds 2^(d+1)-1") != std::string::npos);
}

TEST_CASE("exit codes distinguish usage errors from claim failures") {
  CHECK(run_cli("verify nosuchsuite").exit_code == 2);
  CHECK(run_cli("analyze /nonexistent/file.json --width").exit_code == 2);
  const auto bad = temp_file("vcdlab_cli_bad.json");
  std::ofstream(bad.string()) << "{\"universe\": 2, \"relations\": {\"<\": [[0,1],[1,0]]}}";
  CHECK(run_cli("analyze " + bad.string() + " --width").exit_code == 2);
  CHECK(run_cli("verify quick").exit_code == 0);
}

TEST_CASE("command layer: direct invocation mirrors the binins") {
  vcdlab::cli::GenOptions gen;
  gen.kind = "grid";
  gen.n = 1;
  gen.k = 4;
  gen.output = temp_file("vcdlab_cli_direct.json").string();
  const auto rep = vcdlab::cli::cmd_gen(gen);
  CHECK(rep.exit_code == 0);
  CHECK(rep.findings.at("universe") == 20);

  vcdlab::cli::AnalyzeOptions an;
  an.file = gen.output;
  an.width = true;
  const auto arep = vcdlab::cli::cmd_analyze(an);
  CHECK(arep.findings.at("width") == 4);
  CHECK(arep.to_json().contains("wall_seconds"));
}
