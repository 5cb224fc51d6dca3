#pragma once

namespace nbpolar {

inline constexpr const char* kVersion = "nbpolar 0.1.0";

}  // namespace nbpolar
