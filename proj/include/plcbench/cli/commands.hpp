#pragma once

namespace plcbench {
namespace cli {

// Parses argv, runs one mode, returns the process exit code:
// 0 success, 1 configuration or usage error, 2 runtime failure.
int run(int argc, const char* const* argv);

} // namespace cli
} // namespace plcbench
