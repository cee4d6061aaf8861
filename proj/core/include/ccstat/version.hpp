#pragma once

namespace ccstat {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ccstat
