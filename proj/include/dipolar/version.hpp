#pragma once

namespace dipolar {
inline constexpr const char* kVersion = "0.1.0";
}
