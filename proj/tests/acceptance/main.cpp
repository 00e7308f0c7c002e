// Runs the acceptance criteria and prints one PASS/FAIL line for each.
// Exit status is non-zero when any criterion fails.
//
//   nfd_acceptance            all criteria
//   nfd_acceptance 4 7        selected criteria

#include <cstdlib>
#include <exception>
#include <iostream>
#include <set>
#include <string>

#include <fmt/format.h>

#include "criteria.hpp"

int main(int argc, char** argv) {
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  int failed = 0;
  for (const auto& c : nfd::acceptance::criteria()) {
    if (!selected.empty() && !selected.count(c.number)) continue;
    nfd::acceptance::Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    if (!outcome.pass) ++failed;
    std::cout << fmt::format("[{}] criterion {:>2} {}: {}", outcome.pass ? "PASS" : "FAIL", c.number, c.name,
                             outcome.detail)
              << std::endl;
  }
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
