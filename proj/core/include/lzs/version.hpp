#pragma once

namespace lzs {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace lzs
