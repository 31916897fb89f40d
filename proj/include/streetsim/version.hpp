#pragma once

namespace streetsim {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace streetsim
