#pragma once

namespace gsieve {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace gsieve
