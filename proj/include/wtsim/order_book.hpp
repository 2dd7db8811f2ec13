#pragma once
#include <algorithm>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "wtsim/event_log.hpp"
#include "wtsim/priority.hpp"
#include "wtsim/types.hpp"

namespace wtsim {

struct SubmitResult {
  std::vector<Trade> trades;
  bool rested{false};
  Quantity discarded{0};  // unfilled market remainder
};

// Continuous double auction book. Each side is a std::set ordered by the
// priority rule, so begin() is always the top of the queue. Trades execute
// at the resting order's limit price.
class Book {
public:
  using Queue = std::set<Order, PriorityOrder>;

  Book(PriorityRule rule, Price initial_price, EventLog* log = nullptr)
    : rule_(rule), bids_(PriorityOrder{rule}), asks_(PriorityOrder{rule}),
      last_price_(initial_price), log_(log) {}

  PriorityRule rule() const noexcept { return rule_; }
  Price last_price() const noexcept { return last_price_; }

  std::optional<Price> best_bid() const {
    if (bids_.empty()) return std::nullopt;
    return bids_.begin()->limit_price;
  }

  std::optional<Price> best_ask() const {
    if (asks_.empty()) return std::nullopt;
    return asks_.begin()->limit_price;
  }

  std::optional<Price> spread() const {
    auto b = best_bid();
    auto a = best_ask();
    if (!a || !b) return std::nullopt;
    return Price{a->ticks - b->ticks};
  }

  const Queue& bids() const noexcept { return bids_; }
  const Queue& asks() const noexcept { return asks_; }
  std::size_t size() const noexcept { return bids_.size() + asks_.size(); }

  SubmitResult submit(Order order) {
    validate(order);
    last_tick_ = order.arrival_tick;
    if (log_) log_->record(Phase::continuous, order);

    SubmitResult out;
    Queue& opp = order.side == Side::buy ? asks_ : bids_;
    while (order.remaining > 0 && !opp.empty()) {
      auto top = opp.begin();
      if (!order.is_market() && !crosses(order, *top)) break;

      const Quantity q = std::min(order.remaining, top->remaining);
      Trade t{top->limit_price, q, order.arrival_tick, top->id, order.id, top->side};
      out.trades.push_back(t);
      if (log_) log_->record(Phase::continuous, t);
      last_price_ = top->limit_price;
      order.remaining -= q;

      if (top->remaining == q) {
        opp.erase(top);
      } else {
        auto node = opp.extract(top);
        node.value().remaining -= q;
        opp.insert(opp.begin(), std::move(node));
      }
    }

    if (order.remaining > 0) {
      if (order.is_market()) {
        out.discarded = order.remaining;
      } else {
        own_side(order.side).insert(order);
        out.rested = true;
      }
    }
    return out;
  }

  // Removes and returns every resting order (bids first, each in priority order).
  std::vector<Order> drain() {
    std::vector<Order> out;
    out.reserve(size());
    out.insert(out.end(), bids_.begin(), bids_.end());
    out.insert(out.end(), asks_.begin(), asks_.end());
    bids_.clear();
    asks_.clear();
    return out;
  }

  // Places orders that survived a call auction back on the book without matching.
  void reseed(std::span<const Order> residue, std::optional<Price> last_price) {
    for (const Order& o : residue) {
      if (o.is_market()) throw ContractViolation("reseed: market orders cannot rest");
      own_side(o.side).insert(o);
      last_tick_ = std::max(last_tick_, o.arrival_tick);
    }
    if (auto b = best_bid(), a = best_ask(); a && b && *b >= *a)
      throw ContractViolation("reseed: residue would cross the book");
    if (last_price) last_price_ = *last_price;
  }

  // Advances the clock past ticks consumed outside the book (auction windows).
  void advance_clock(Tick t) noexcept { last_tick_ = std::max(last_tick_, t); }

private:
  static bool crosses(const Order& incoming, const Order& resting) noexcept {
    return incoming.side == Side::buy ? incoming.limit_price >= resting.limit_price
                                      : incoming.limit_price <= resting.limit_price;
  }

  Queue& own_side(Side s) noexcept { return s == Side::buy ? bids_ : asks_; }

  void validate(const Order& o) const {
    if (o.remaining < 1 || o.remaining > o.quantity)
      throw ContractViolation("submit: remaining must be in [1, quantity]");
    if (!o.is_market() && o.limit_price.ticks <= 0)
      throw ContractViolation("submit: limit price must be positive");
    if (o.id != o.arrival_tick) throw ContractViolation("submit: order id must equal arrival tick");
    if (o.arrival_tick <= last_tick_)
      throw ContractViolation("submit: arrival tick must increase strictly");
  }

  PriorityRule rule_;
  Queue bids_;
  Queue asks_;
  Price last_price_;
  Tick last_tick_{0};
  EventLog* log_;
};

} // namespace wtsim
