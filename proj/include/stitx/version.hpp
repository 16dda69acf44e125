#pragma once

namespace stitx {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace stitx
