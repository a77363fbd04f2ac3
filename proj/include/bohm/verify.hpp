#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace bohm {

// One verification row.  `measured` is compared against `expected` in the
// sense described by `claim`; `pass` is the authoritative outcome.
struct CheckResult {
  int criterion = 0;  // 1..11
  std::string name;
  std::string claim;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

struct VerifyOptions {
  unsigned threads = 0;  // section batches; 0 = env / hardware
};

// Run the full verification suite in criterion order.  When progress is
// non-null a one-line summary of each row is streamed to it as it finishes.
std::vector<CheckResult> run_verification(const VerifyOptions& opt = {},
                                          std::ostream* progress = nullptr);

bool all_passed(const std::vector<CheckResult>& results);

std::string format_check_line(const CheckResult& r);

nlohmann::ordered_json verification_report(
    const std::vector<CheckResult>& results);

}  // namespace bohm
