// Runs every acceptance criterion and prints one line per criterion.

#include <cstdio>
#include <cstdlib>
#include <iostream>

#include "contnum/acceptance.hpp"

int main(int argc, char** argv) {
  contnum::AcceptanceOptions options;
  for (int i = 1; i < argc; ++i) options.only.insert(std::atoi(argv[i]));

  const auto results = contnum::run_acceptance(options);
  int failed = 0;
  for (const auto& r : results) {
    std::printf("criterion %d %s  %s: %s (%.2fs of %.0fs)\n", r.id, r.passed ? "PASS" : "FAIL", r.title.c_str(),
                r.detail.c_str(), r.seconds, r.budget_seconds);
    if (!r.passed) ++failed;
  }
  std::printf("%zu criteria, %d failed\n", results.size(), failed);
  return failed == 0 ? 0 : 1;
}
