#pragma once

namespace trustcf {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace trustcf
