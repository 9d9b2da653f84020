#pragma once

namespace chainscope {

inline constexpr const char* kToolName = "chainscope";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace chainscope
