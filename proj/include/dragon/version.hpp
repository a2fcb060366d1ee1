#pragma once

namespace dragon {
inline constexpr const char* kVersion = "1.0.0";
}
