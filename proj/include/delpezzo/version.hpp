#pragma once

namespace delpezzo {

inline constexpr const char* kToolName = "dpflex";
inline constexpr const char* kToolVersion = "1.0.0";

} // namespace delpezzo
