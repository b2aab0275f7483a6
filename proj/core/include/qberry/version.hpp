#pragma once

namespace qberry {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace qberry
