#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace vcdlab::cli {

/// One command execution, reproducible from (inputs, seed). `text` is the
/// human-readable rendering; to_json() carries the certificates.
struct RunReport {
  std::string command;
  nlohmann::json inputs;
  nlohmann::json findings;
  double wall_seconds = 0;
  uint64_t seed = 0;
  int exit_code = 0;  // 0 ok, 1 claim failure, 2 usage/input error
  std::string text;

  nlohmann::json to_json() const;
};

struct GenOptions {
  std::string kind;  // grid | hypercube | random
  int n = 1;
  int k = 3;
  int d = 1;
  int width = 3;
  int size = 12;
  uint64_t seed = 0;
  std::string output;  // empty: stdout
};
RunReport cmd_gen(const GenOptions&);

struct AnalyzeOptions {
  std::string file;
  bool width = false;
  bool breadth = false;
  bool zerotypes = false;
  bool aut = false;
  std::string rel = "<";
};
RunReport cmd_analyze(const AnalyzeOptions&);

struct DefinabilityOptions {
  std::string file;
  std::vector<std::string> delta;  // formula sources; default {"x < y"}
  std::string b_spec = "set:B";    // "set:NAME", "all", or comma-separated elements
  int d = 1;
  std::optional<std::string> type_of;  // restrict to the type of this element
  std::optional<std::string> over;     // restrict realizers to this set spec
  std::string rel = "<";
  int jobs = 1;
};
RunReport cmd_definability(const DefinabilityOptions&);

struct Lemma31Options {
  std::string file;
  std::string psi;
  std::string phi;
  std::string c;
  std::string b_spec = "set:B";
  int d = 0;
  std::string rel = "<";
};
RunReport cmd_lemma31(const Lemma31Options&);

struct VerifyOptions {
  std::string suite = "paper";
};
RunReport cmd_verify(const VerifyOptions&);

}  // namespace vcdlab::cli
