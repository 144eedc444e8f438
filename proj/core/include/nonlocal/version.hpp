#pragma once

namespace nonlocal {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace nonlocal
