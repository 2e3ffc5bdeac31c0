#pragma once

namespace qkr {
inline constexpr const char* version = "0.1.0";
}
