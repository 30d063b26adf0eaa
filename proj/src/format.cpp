#include "jfft/format.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include "jfft/errors.hpp"

namespace jfft {

std::string format_double(double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
  if (ec != std::errc{}) throw FormatError("cannot format number");
  return std::string(buf.data(), ptr);
}

std::string_view trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r");
  return text.substr(first, last - first + 1);
}

double parse_double(std::string_view text) {
  const std::string_view t = trim(text);
  double value = 0.0;
  // from_chars rejects a leading '+', which CSV writers sometimes emit.
  const std::string_view body = (!t.empty() && t.front() == '+') ? t.substr(1) : t;
  const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), value);
  if (body.empty() || ec != std::errc{} || ptr != body.data() + body.size() || !std::isfinite(value)) {
    throw FormatError("malformed number '" + std::string(text) + "'");
  }
  return value;
}

int parse_int(std::string_view text) {
  const std::string_view t = trim(text);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) {
    throw FormatError("malformed integer '" + std::string(text) + "'");
  }
  return value;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace jfft
