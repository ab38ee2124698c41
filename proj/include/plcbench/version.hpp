#pragma once

namespace plcbench {

inline constexpr const char* kVersion = "0.1.0";

} // namespace plcbench
