#pragma once

#include <ostream>

namespace evimap {

/// Entry point of the `evimap` tool. Subcommands: extrapolate, entropy, info,
/// conflict, plausible, suggest. Returns 0 on success, 1 on input or usage
/// errors, 2 when a normalized run leaves every cell in total conflict.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace evimap
