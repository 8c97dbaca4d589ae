// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdio>
#include <cstdlib>
#include <string>

namespace discordlab {

/// All numeric output is printed with 12 significant digits.
inline std::string format_number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

/// Double rounded to its 12-significant-digit decimal representation, so that
/// values embedded in JSON print exactly like the CSV ones.
inline double round_to_output_precision(double x) {
    return std::strtod(format_number(x).c_str(), nullptr);
}

}  // namespace discordlab
