#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace monokit {

/// RFC-4180-style CSV with '.' decimal separator and 17 significant digits
/// (round-trip exact for doubles, and byte-stable for fixed inputs).
inline std::string csv_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline void csv_row(std::ostream& os, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) os << ',';
        os << fields[i];
    }
    os << "\r\n";
}

}  // namespace monokit
