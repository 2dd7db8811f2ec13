#pragma once
#include <cmath>
#include <compare>
#include <cstdint>
#include <string_view>

#include "wtsim/errors.hpp"

namespace wtsim {

using Tick = std::uint64_t;     // event-count clock, one step per agent action
using OrderId = Tick;           // ids are arrival ticks
using Quantity = std::int64_t;  // shares

inline constexpr double kDefaultTickSize = 0.01;

// Price expressed as an integer number of ticks.
struct Price {
  std::int64_t ticks{0};

  friend constexpr auto operator<=>(Price, Price) = default;

  constexpr double value(double tick_size = kDefaultTickSize) const noexcept {
    return static_cast<double>(ticks) * tick_size;
  }

  // Rounds half away from zero onto the tick grid.
  static Price from_value(double v, double tick_size = kDefaultTickSize) {
    return Price{std::llround(v / tick_size)};
  }
};

enum class Side : std::uint8_t { buy, sell };
enum class OrderKind : std::uint8_t { limit, market };
enum class Phase : std::uint8_t { open_auction, continuous, close_auction };

constexpr Side opposite(Side s) noexcept { return s == Side::buy ? Side::sell : Side::buy; }

constexpr std::string_view to_string(Side s) noexcept { return s == Side::buy ? "buy" : "sell"; }

constexpr std::string_view to_string(OrderKind k) noexcept {
  return k == OrderKind::limit ? "limit" : "market";
}

constexpr std::string_view to_string(Phase p) noexcept {
  switch (p) {
    case Phase::open_auction: return "open_auction";
    case Phase::continuous: return "continuous";
    case Phase::close_auction: return "close_auction";
  }
  return "?";
}

struct Order {
  OrderId id{0};
  Side side{Side::buy};
  OrderKind kind{OrderKind::limit};
  Price limit_price{};  // meaningless for market orders
  Quantity quantity{0};
  Quantity remaining{0};
  Tick arrival_tick{0};

  constexpr bool is_market() const noexcept { return kind == OrderKind::market; }

  static Order limit(Side side, Price price, Quantity qty, Tick tick) {
    if (price.ticks <= 0) throw ContractViolation("limit order needs a positive price");
    if (qty < 1) throw ContractViolation("order quantity must be >= 1");
    return Order{tick, side, OrderKind::limit, price, qty, qty, tick};
  }

  static Order market(Side side, Quantity qty, Tick tick) {
    if (qty < 1) throw ContractViolation("order quantity must be >= 1");
    return Order{tick, side, OrderKind::market, Price{}, qty, qty, tick};
  }

  friend bool operator==(const Order&, const Order&) = default;
};

struct Trade {
  Price price{};
  Quantity quantity{0};
  Tick tick{0};
  OrderId maker_id{0};
  OrderId taker_id{0};
  Side maker_side{Side::buy};

  friend bool operator==(const Trade&, const Trade&) = default;
};

} // namespace wtsim
