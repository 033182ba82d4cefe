#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

namespace citenorm {

// Lowercases and collapses every run of characters outside [a-z0-9] into a
// single hyphen, trimming hyphens at both ends. "Earth/space sciences"
// becomes "earth-space-sciences". Idempotent on already-slugged input.
inline std::string slugify(std::string_view name) {
  std::string out;
  out.reserve(name.size());
  bool pending_separator = false;
  for (unsigned char c : name) {
    char lower = (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a')
                                        : static_cast<char>(c);
    bool alnum = (lower >= 'a' && lower <= 'z') || (lower >= '0' && lower <= '9');
    if (alnum) {
      if (pending_separator && !out.empty()) out.push_back('-');
      pending_separator = false;
      out.push_back(lower);
    } else {
      pending_separator = true;
    }
  }
  return out;
}

// %.*g formatting: `digits` significant digits, trailing zeros trimmed.
inline std::string format_sig(double value, int digits) {
  char buf[64];
  int n = std::snprintf(buf, sizeof(buf), "%.*g", digits, value);
  return std::string(buf, static_cast<std::size_t>(n));
}

// Fixed-point with `decimals` digits after the point.
inline std::string format_fixed(double value, int decimals) {
  char buf[64];
  int n = std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  return std::string(buf, static_cast<std::size_t>(n));
}

// Shortest decimal form that parses back to the same double ("250", "2.5").
inline std::string format_shortest(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

// Number of significant digits in a printed decimal like "4.0047971" (8)
// or "0.124" (3). Leading zeros do not count.
inline int significant_digits(std::string_view printed) {
  int count = 0;
  bool seen_nonzero = false;
  for (char c : printed) {
    if (c < '0' || c > '9') continue;
    if (c != '0') seen_nonzero = true;
    if (seen_nonzero) ++count;
  }
  return count;
}

// Round half away from zero (llround semantics, independent of the current
// floating-point rounding mode).
inline std::int64_t round_half_away(double value) {
  return std::llround(value);
}

}  // namespace citenorm
