// Acceptance gate: runs the full verification suite and prints one
// pass/fail line per check.  Exit 0 when every check passes, 2 otherwise.

#include <cstdio>
#include <iostream>

#include "bohm/verify.hpp"

int main() {
  std::vector<bohm::CheckResult> results =
      bohm::run_verification({}, &std::cout);
  std::size_t failed = 0;
  for (const bohm::CheckResult& r : results)
    if (!r.pass) ++failed;
  if (failed == 0) {
    std::cout << "ACCEPTED: all " << results.size() << " checks passed\n";
    return 0;
  }
  std::cout << "REJECTED: " << failed << " of " << results.size()
            << " checks failed\n";
  return 2;
}
