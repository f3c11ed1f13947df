#pragma once

namespace gmrfig {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace gmrfig
