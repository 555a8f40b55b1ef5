#pragma once

namespace qsat {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kToolName = "qsat";

}  // namespace qsat
