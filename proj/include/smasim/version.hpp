#pragma once

namespace smasim {

inline constexpr const char* kToolName = "smasim";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace smasim
