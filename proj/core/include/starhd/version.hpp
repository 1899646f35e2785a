#pragma once

#define STARHD_VERSION_MAJOR 0
#define STARHD_VERSION_MINOR 1
#define STARHD_VERSION_PATCH 0

namespace starhd {

inline const char* version() { return "0.1.0"; }

}  // namespace starhd
