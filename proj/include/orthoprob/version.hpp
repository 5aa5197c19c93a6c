#pragma once

namespace orthoprob {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace orthoprob
