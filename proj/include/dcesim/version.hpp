#pragma once

namespace dce {
inline constexpr const char* kVersion = "0.1.0";
}
