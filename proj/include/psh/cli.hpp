#ifndef PSH_CLI_HPP
#define PSH_CLI_HPP

#include <json.hpp>

#include "psh/workspace.hpp"

namespace psh {

inline constexpr const char* kArtifactName = "psh";
inline constexpr const char* kArtifactVersion = "0.1.0";

// Process exit codes.
inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailure = 1;
inline constexpr int kExitBudget = 2;
inline constexpr int kExitInputError = 3;

struct CliRequest {
  std::string command;  // derive-initial | derive-coproduct | derive-copair |
                        // verify | explain
  std::vector<std::string> names;  // positional arguments of the command
  std::vector<std::string> suite;  // check ids for verify; empty means all
  WorkspaceConfig config;          // workspace config with flag overrides applied
};

struct RunOutcome {
  nlohmann::json report;
  int exit_code = kExitPass;
};

/// Executes a command against a loaded workspace. Reports are deterministic:
/// identical workspace, command and config produce byte-identical documents.
RunOutcome run_command(const CliRequest& req, const Workspace& ws);

/// Renders a report as canonical JSON or as an indented text tree.
std::string render_report(const nlohmann::json& report,
                          const std::string& format);

}  // namespace psh

#endif
