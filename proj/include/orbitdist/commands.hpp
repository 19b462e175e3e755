#pragma once

#include <string>

#include "orbitdist/config.hpp"

namespace orbitdist {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

// Executes config.command and writes its artifacts. Returns the process exit
// code: 0 success, 1 a probe or property check failed (witness in the
// report). Configuration problems and precision exhaustion are thrown as
// ConfigError / PrecisionError for the caller to map to exit codes 2 / 3.
int run_command(const RunConfig& config);

// Atomic file write (temp-then-rename); path "" streams to stdout.
void write_text_output(const std::string& path, const std::string& text);

}  // namespace orbitdist
