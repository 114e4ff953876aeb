// Acceptance suite: runs every claim criterion at its pinned tolerance and
// prints one pass/fail line per criterion. Exit code 0 iff all pass.

#include <iostream>

#include "vcdlab/verify.hpp"

int main() {
  std::cout << "acceptance suite: " << vcdlab::verify::criteria().size() << " criteria\n";
  const auto results = vcdlab::verify::run_suite("paper", &std::cout);
  const bool ok = vcdlab::verify::all_passed(results);
  std::cout << (ok ? "RESULT: all criteria passed\n" : "RESULT: FAILURE\n");
  return ok ? 0 : 1;
}
