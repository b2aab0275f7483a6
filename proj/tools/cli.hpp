#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qberry::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kInputError = 2,
  kNumericalInconsistency = 3,
  kPhysicsAssertion = 4,
};

/// Runs the qberry command line; args excludes the program name. Documents go
/// to out (or the --output file), diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 64-bit FNV-1a, hex encoded.
std::string fnv1a_hex(const std::string& text);

}  // namespace qberry::cli
