#pragma once

namespace strucnet {

inline constexpr const char* kToolName = "strucnet";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace strucnet
