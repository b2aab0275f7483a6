#pragma once

// Acceptance checks over seeded random ensembles. Each criterion draws from
// its own stream derived from the run seed, so a criterion gives the same
// numbers whether it runs alone or inside a larger suite.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace qberry {

struct Check {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  std::vector<Check> checks;
  /// Set when the criterion stopped on an exception.
  std::string error;
  bool passed() const noexcept;
};

inline constexpr int kCriterionCount = 12;

/// Criterion ids selected by a suite name: all, bargmann, algebra, geometry,
/// quantization, dynamics, morph, or c1 .. c12. Empty for an unknown name.
std::vector<int> suite_criteria(std::string_view suite);

CriterionResult run_criterion(int id, std::uint64_t seed);

/// Runs the criteria concurrently; results are ordered by id.
std::vector<CriterionResult> run_suite(std::string_view suite, std::uint64_t seed);

nlohmann::json to_json(const CriterionResult& r);
/// One "PASS"/"FAIL" line with the worst measured-to-tolerance check.
std::string summary_line(const CriterionResult& r);

}  // namespace qberry
