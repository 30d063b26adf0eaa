#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace jfft {

/// Locale-independent shortest-of-%.17g rendering; round-trips every finite double.
std::string format_double(double value);

/// Strict locale-independent parse of a whole field (surrounding blanks allowed).
/// Throws FormatError on trailing garbage or non-finite values.
double parse_double(std::string_view text);
int parse_int(std::string_view text);

std::string_view trim(std::string_view text);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace jfft
