#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace vcdlab::verify {

struct CriterionResult {
  std::string id;
  std::string title;
  bool pass = false;
  double seconds = 0;
  std::string summary;  // measured quantities, or the falsifying certificate
  nlohmann::json details;
};

struct Criterion {
  std::string id;
  std::string title;
  bool quick;             // member of the fast subset
  double budget_seconds;  // 0: no runtime bound enforced
  std::function<CriterionResult()> run;
};

/// The full claim suite, in report order.
const std::vector<Criterion>& criteria();

/// Runs "paper" (everything) or "quick" (fast subset). Prints one pass/fail
/// line per criterion to `progress` when given. Unknown suite names throw
/// std::invalid_argument.
std::vector<CriterionResult> run_suite(const std::string& which, std::ostream* progress);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace vcdlab::verify
