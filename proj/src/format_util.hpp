#pragma once

#include <charconv>
#include <string>

namespace ahs::detail {

// Shortest decimal string that round-trips to the same double; keeps every
// emitted artifact byte-deterministic.
inline std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace ahs::detail
