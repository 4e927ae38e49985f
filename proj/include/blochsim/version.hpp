#pragma once

namespace blochsim {

inline constexpr const char* kLibraryName = "blochsim";
inline constexpr const char* kLibraryVersion = "0.1.0";

} // namespace blochsim
