#pragma once

#include <string>
#include <vector>

#include "tgerm/germ.hpp"
#include "tgerm/report_json.hpp"

namespace tgerm {

namespace exit_code {
inline constexpr int kPass = 0;
inline constexpr int kFailedCheck = 1;
inline constexpr int kParseError = 2;
inline constexpr int kValidationFailure = 3;
inline constexpr int kUnknownCommand = 64;
}  // namespace exit_code

struct CliOutcome {
  int exit_code = exit_code::kPass;
  std::string out;  // stdout text (JSON when --json)
  std::string err;  // diagnostics
  Json report;      // always filled for recognised commands
};

/// args excludes the program name: {"invariants", "--germ", "cAx4", "--json"}.
CliOutcome run(const std::vector<std::string>& args);

/// A builtin germ name or a path to a germ document. Throws DocumentError,
/// GermError or std::runtime_error (unreadable file).
NormalizedGerm load_germ(const std::string& spec);

}  // namespace tgerm
