#pragma once

#include <charconv>
#include <cstdint>
#include <string>

namespace mhd {

// 17 significant digits, locale-independent; every file writer goes through
// this so identical runs produce identical bytes.
inline std::string fmt_g17(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

inline std::string fmt_int(long long x) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

}  // namespace mhd
