#pragma once

namespace switchstab {

inline constexpr const char* kToolName = "switchstab";
inline constexpr const char* kToolVersion = "1.0.0";

} // namespace switchstab
