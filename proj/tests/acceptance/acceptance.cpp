// Runs every acceptance criterion once and prints one PASS/FAIL line each.
// Usage: acceptance [--seed N]

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <string>

#include "qberry/verification.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 20240611;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--seed" && i + 1 < argc) {
      seed = std::strtoull(argv[++i], nullptr, 10);
    } else {
      std::cerr << "usage: acceptance [--seed N]\n";
      return 2;
    }
  }

  int failed = 0;
  for (int id = 1; id <= qberry::kCriterionCount; ++id) {
    const qberry::CriterionResult r = qberry::run_criterion(id, seed);
    std::cout << qberry::summary_line(r) << std::endl;
    if (!r.passed()) {
      ++failed;
      if (!r.error.empty()) std::cout << "      error: " << r.error << "\n";
      for (const auto& c : r.checks)
        if (!c.passed) std::cout << "      " << c.name << ": " << c.measured << " > " << c.tolerance << "\n";
    }
  }
  std::cout << (qberry::kCriterionCount - failed) << "/" << qberry::kCriterionCount << " criteria passed (seed "
            << seed << ")\n";
  return failed == 0 ? 0 : 1;
}
