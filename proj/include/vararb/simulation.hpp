#pragma once

#include "vararb/cli.hpp"
#include "vararb/loss_model.hpp"
#include "vararb/report.hpp"

namespace vararb {

/// Support size used when the solver is handed the uniform law.
inline constexpr std::size_t kSolverGridPoints = 500;

LossModel load_model(const Command& command);

/// Executes a parsed command end to end; a pure function of the command
/// (and the input file, if any).
CapitalReport run_simulation(const Command& command);

}  // namespace vararb
