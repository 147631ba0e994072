#include <iostream>

#include "zeeman/acceptance.hpp"

int main() {
  const auto checks = zeeman::run_acceptance(false);
  int failed = 0;
  for (const auto& c : checks) {
    std::cout << zeeman::format_check(c) << "\n";
    if (!c.pass) ++failed;
  }
  std::cout << (failed ? "FAILED " : "ALL PASSED ") << checks.size() - failed << "/" << checks.size()
            << "\n";
  return failed ? 1 : 0;
}
