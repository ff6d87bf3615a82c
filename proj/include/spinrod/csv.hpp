#pragma once

#include <cstdio>
#include <ostream>
#include <string>

namespace spinrod {

/// Floating-point to text with 17 significant digits (round-trip exact).
inline std::string fp17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace spinrod
