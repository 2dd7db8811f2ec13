#pragma once
#include <ostream>
#include <span>
#include <variant>
#include <vector>

#include "wtsim/format.hpp"
#include "wtsim/types.hpp"

namespace wtsim {

struct OrderEvent {
  Phase phase{Phase::continuous};
  Order order;
};

struct TradeEvent {
  Phase phase{Phase::continuous};
  Trade trade;
};

using Event = std::variant<OrderEvent, TradeEvent>;

// Append-only record of submissions and fills, in arrival order.
class EventLog {
public:
  void record(Phase phase, const Order& o) { events_.emplace_back(OrderEvent{phase, o}); }
  void record(Phase phase, const Trade& t) { events_.emplace_back(TradeEvent{phase, t}); }

  std::span<const Event> events() const noexcept { return events_; }
  std::size_t size() const noexcept { return events_.size(); }
  void clear() noexcept { events_.clear(); }

private:
  std::vector<Event> events_;
};

// trade rows: trade,tick,side,price,quantity,maker_id,taker_id[,phase]   (side = maker side)
inline void write_trade_row(std::ostream& os, const Trade& t, double tick_size,
                            const Phase* phase = nullptr) {
  os << "trade," << t.tick << ',' << to_string(t.maker_side) << ','
     << format_price(t.price, tick_size) << ',' << t.quantity << ',' << t.maker_id << ','
     << t.taker_id;
  if (phase) os << ',' << to_string(*phase);
  os << '\n';
}

// order rows: order,tick,side,kind,price,quantity[,phase]   (price empty for market orders)
inline void write_order_row(std::ostream& os, const Order& o, double tick_size,
                            const Phase* phase = nullptr) {
  os << "order," << o.arrival_tick << ',' << to_string(o.side) << ',' << to_string(o.kind) << ',';
  if (!o.is_market()) os << format_price(o.limit_price, tick_size);
  os << ',' << o.quantity;
  if (phase) os << ',' << to_string(*phase);
  os << '\n';
}

inline void write_csv(std::ostream& os, const EventLog& log, double tick_size,
                      bool with_phase) {
  for (const auto& e : log.events()) {
    std::visit(
      [&](const auto& ev) {
        using T = std::decay_t<decltype(ev)>;
        const Phase* ph = with_phase ? &ev.phase : nullptr;
        if constexpr (std::is_same_v<T, OrderEvent>) write_order_row(os, ev.order, tick_size, ph);
        else write_trade_row(os, ev.trade, tick_size, ph);
      },
      e);
  }
}

} // namespace wtsim
