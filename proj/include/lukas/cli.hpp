#pragma once

#include <iosfwd>

namespace lukas::cli {

inline constexpr const char* kToolName = "lukas";
inline constexpr const char* kToolVersion = "1.0.0";

/// Runs one CLI invocation. Exit codes: 0 success, 2 validation/usage
/// error, 3 numeric non-convergence, 1 internal error.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace lukas::cli
