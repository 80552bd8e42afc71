#pragma once

#include <ostream>

namespace qcav::cli {

// Exit codes: 0 clean, 1 suspicious, 2 malicious, 3 bad input or parse
// failure, 4 internal error. Scanning several files exits with the maximum.
inline constexpr int exit_clean = 0;
inline constexpr int exit_suspicious = 1;
inline constexpr int exit_malicious = 2;
inline constexpr int exit_input_error = 3;
inline constexpr int exit_internal_error = 4;

// Full tool entry point; streams are injectable so tests can capture output.
int run(int argc, const char *const *argv, std::ostream &out,
        std::ostream &err);

} // namespace qcav::cli
