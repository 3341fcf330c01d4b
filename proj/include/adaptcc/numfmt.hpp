#pragma once

#include <string>

namespace adaptcc {

// Shortest decimal string that parses back to the same double; "inf",
// "-inf" and "nan" for non-finite values. Locale independent.
std::string format_double(double x);

// 64-bit FNV-1a, rendered as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace adaptcc
