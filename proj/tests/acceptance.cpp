// Acceptance gate: runs every check suite and prints one verdict line per
// numbered criterion (A1..A9).  Exit status 0 only if all of them pass.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <vector>

#include "neass/suites.hpp"

int main() {
  int threads = 1;
  if (const char* env = std::getenv("NEASS_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) threads = n;
  }

  std::vector<neass::CriterionLine> all;
  bool crashed = false;
  for (const std::string& name : neass::suite_names()) {
    std::printf("=== suite %s ===\n", name.c_str());
    std::fflush(stdout);
    try {
      const neass::SuiteReport rep = neass::run_suite(name, threads);
      for (const auto& line : rep.lines) {
        std::printf("  %s  %s: %s\n", line.pass ? "pass" : "FAIL", line.name.c_str(),
                    line.detail.c_str());
        all.push_back(line);
      }
      std::printf("  (%.1f s)\n", rep.seconds);
    } catch (const std::exception& e) {
      std::printf("  FAIL  suite %s aborted: %s\n", name.c_str(), e.what());
      crashed = true;
    }
    std::fflush(stdout);
  }

  std::sort(all.begin(), all.end(),
            [](const neass::CriterionLine& a, const neass::CriterionLine& b) {
              return a.name < b.name;
            });

  std::printf("\n");
  bool ok = !crashed;
  for (const auto& line : all) {
    std::printf("%s %s -- %s\n", line.name.c_str(), line.pass ? "PASS" : "FAIL",
                line.detail.c_str());
    ok = ok && line.pass;
  }
  std::printf("\nACCEPTANCE %s\n", ok ? "PASS" : "FAIL");
  return ok ? 0 : 1;
}
