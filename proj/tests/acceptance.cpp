#include <cstdio>

#include "qisim/verify.hpp"

int main() {
  const auto results = qisim::verify::run_checks(true);
  int failures = 0;
  for (const auto& r : results) {
    std::printf("%s %s: %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(),
                r.detail.c_str());
    if (!r.passed) ++failures;
  }
  std::printf("%d/%d acceptance checks passed\n",
              static_cast<int>(results.size()) - failures,
              static_cast<int>(results.size()));
  return failures == 0 ? 0 : 1;
}
