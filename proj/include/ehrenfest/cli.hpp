#pragma once

#include <iosfwd>

namespace ehrenfest {

/// Exit codes of the command-line tool.
enum ExitCode : int { kOk = 0, kConfigError = 2, kNumericalError = 3, kIoError = 4 };

/// Entry point of the `ehrenfest` tool:
///   ehrenfest run --config <file> --out <prefix> [--no-quantum]
///   ehrenfest preset <name> --out <prefix> [--no-quantum]
///   ehrenfest preset <name> --print-config
///   ehrenfest compare --csv <file> [--mass <mu>]
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ehrenfest
