#pragma once

#include <string>
#include <vector>

namespace qisim::verify {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Fast: closed-form reproduction numbers, engine equivalence, gain
// invariance, optimizer validation. Full adds the Fock-oracle chain, the
// exact-engine large-N convergence, and the symplectic fuzz.
std::vector<CheckResult> run_checks(bool full);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace qisim::verify
