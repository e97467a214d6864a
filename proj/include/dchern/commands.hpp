#pragma once

#include <exception>
#include <ostream>
#include <string>
#include <vector>

#include "dchern/config.hpp"

namespace dchern {

struct CommandResult {
  int exit_code = 0;
  std::vector<std::string> files;  // written, in order
  std::string summary;             // human-readable report
};

// Each command validates the configuration before touching the output
// directory. Exceptions: ValidationError / ResourceError for bad input,
// ComputationError for numerical failures.
CommandResult cmd_spectrum(const RunConfig& cfg);
CommandResult cmd_dynamics(const RunConfig& cfg);
CommandResult cmd_wavefront(const RunConfig& cfg);
CommandResult cmd_circuit(const RunConfig& cfg);
CommandResult cmd_verify(const RunConfig& cfg);

CommandResult run_command(const std::string& name, const RunConfig& cfg);

// Maps exceptions to exit codes: 1 validation, 2 computation failure.
int exit_code_for(const std::exception& e);

}  // namespace dchern
