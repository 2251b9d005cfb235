#pragma once

#include <cstdio>
#include <string>

namespace katolab {

// 17 significant digits round-trips every IEEE double exactly; the CLI
// contract (CSV cells and JSON number strings) is byte-stable per value.
inline std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return std::string(buf);
}

} // namespace katolab
