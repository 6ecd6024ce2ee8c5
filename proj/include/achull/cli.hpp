#pragma once

#include <iosfwd>

namespace achull::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitNoConvergence = 3;

// Entry point of the `achull` tool. Reports go to `out` (or --output),
// diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace achull::cli
