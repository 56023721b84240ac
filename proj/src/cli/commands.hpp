#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "pglb/halting.hpp"

namespace pglb::cli {

enum ExitCode : int { Ok = 0, Negative = 1, Usage = 2 };

/// Runs the command line `args` (without the program name). Output goes to
/// `out`, diagnostics to `err`; returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// {candidate, verdict, witnessProgram, witnessState, claimed, actual, steps}
nlohmann::json verdictRecord(const InstructionSequence& candidate, const SolverVerdict& v);

}  // namespace pglb::cli
