#pragma once
#include <charconv>
#include <cmath>
#include <string>

#include "wtsim/types.hpp"

namespace wtsim {

inline int tick_decimals(double tick_size) noexcept {
  const double d = std::ceil(-std::log10(tick_size) - 1e-9);
  return d < 0 ? 0 : static_cast<int>(d);
}

inline std::string format_price(Price p, double tick_size = kDefaultTickSize) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, p.value(tick_size), std::chars_format::fixed,
                           tick_decimals(tick_size));
  return std::string(buf, res.ptr);
}

// Shortest representation that round-trips.
inline std::string format_real(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

} // namespace wtsim
