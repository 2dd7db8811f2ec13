#pragma once
#include <cstdint>
#include <string_view>

#include "wtsim/types.hpp"

namespace wtsim {

// Ranking of resting orders on one side of the book.
//   ptq: price, then arrival time, then quantity (Milan style).
//   pqt: price, then quantity, then arrival time (NYSE as modeled).
enum class PriorityRule : std::uint8_t { ptq, pqt };

enum class Precedence : std::uint8_t { a_first, b_first };

constexpr std::string_view to_string(PriorityRule r) noexcept {
  return r == PriorityRule::ptq ? "PTQ" : "PQT";
}

namespace detail {

// Market orders outrank every limit order on their side.
constexpr int price_order(const Order& a, const Order& b) noexcept {
  if (a.is_market() != b.is_market()) return a.is_market() ? -1 : 1;
  if (a.is_market() || a.limit_price == b.limit_price) return 0;
  const bool better = a.side == Side::buy ? a.limit_price > b.limit_price
                                          : a.limit_price < b.limit_price;
  return better ? -1 : 1;
}

constexpr int time_order(const Order& a, const Order& b) noexcept {
  if (a.arrival_tick == b.arrival_tick) return 0;
  return a.arrival_tick < b.arrival_tick ? -1 : 1;
}

// Ranks on the original size; partial fills keep their place.
constexpr int size_order(const Order& a, const Order& b) noexcept {
  if (a.quantity == b.quantity) return 0;
  return a.quantity > b.quantity ? -1 : 1;
}

} // namespace detail

// True when `a` ranks strictly ahead of `b`. Both must be on the same side.
constexpr bool ranks_before(PriorityRule rule, const Order& a, const Order& b) noexcept {
  if (int c = detail::price_order(a, b); c != 0) return c < 0;
  if (rule == PriorityRule::ptq) {
    if (int c = detail::time_order(a, b); c != 0) return c < 0;
    return detail::size_order(a, b) < 0;
  }
  if (int c = detail::size_order(a, b); c != 0) return c < 0;
  return detail::time_order(a, b) < 0;
}

inline Precedence compare(PriorityRule rule, const Order& a, const Order& b) {
  if (a.side != b.side) throw ContractViolation("compare: orders on different sides");
  if (a.id == b.id) throw ContractViolation("compare: an order cannot be ranked against itself");
  return ranks_before(rule, a, b) ? Precedence::a_first : Precedence::b_first;
}

// Strict weak ordering usable as a container comparator.
struct PriorityOrder {
  PriorityRule rule{PriorityRule::ptq};

  bool operator()(const Order& a, const Order& b) const noexcept {
    return ranks_before(rule, a, b);
  }
};

} // namespace wtsim
