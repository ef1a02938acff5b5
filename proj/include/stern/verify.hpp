#pragma once

// Named invariant suites reachable from the command line. Each suite checks
// identities between independent evaluation routes over a fixed range.

#include <cstdint>
#include <string>
#include <vector>

namespace stern {

struct SuiteResult {
  std::string name;
  std::uint64_t passed = 0;
  std::uint64_t failed = 0;
  /// First few failure descriptions.
  std::vector<std::string> failures;

  bool ok() const { return failed == 0; }
};

/// Suite names accepted by run_suite, in display order.
const std::vector<std::string>& suite_names();

/// Throws DomainError for an unknown suite name. "all" runs every suite.
std::vector<SuiteResult> run_suite(const std::string& name);

}  // namespace stern
