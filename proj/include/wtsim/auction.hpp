#pragma once
#include <algorithm>
#include <cstdlib>
#include <optional>
#include <span>
#include <vector>

#include "wtsim/event_log.hpp"
#include "wtsim/priority.hpp"
#include "wtsim/types.hpp"

namespace wtsim {

// Orders collected during an opening or closing call, [window_start, window_end].
class AuctionBatch {
public:
  AuctionBatch(Tick window_start, Tick window_end, Price reference_price)
    : start_(window_start), end_(window_end), reference_(reference_price) {
    if (window_end < window_start) throw ContractViolation("auction window ends before it starts");
  }

  void collect(const Order& o) {
    if (o.arrival_tick < start_ || o.arrival_tick > end_)
      throw ContractViolation("auction: order tick outside the collection window");
    orders_.push_back(o);
  }

  std::span<const Order> orders() const noexcept { return orders_; }
  std::size_t size() const noexcept { return orders_.size(); }
  Tick window_start() const noexcept { return start_; }
  Tick window_end() const noexcept { return end_; }
  Price reference_price() const noexcept { return reference_; }

private:
  Tick start_;
  Tick end_;
  Price reference_;
  std::vector<Order> orders_;
};

struct AuctionOutcome {
  std::optional<Price> price;
  Quantity volume{0};
  std::vector<Trade> trades;
  std::vector<Order> residue;  // limit orders left over, original ticks kept
};

// Executable volume at one candidate price.
struct AuctionLevel {
  Price price;
  Quantity demand{0};  // buys willing to pay >= price
  Quantity supply{0};  // sells willing to take <= price

  Quantity volume() const noexcept { return std::min(demand, supply); }
  Quantity imbalance() const noexcept { return demand > supply ? demand - supply : supply - demand; }
};

namespace detail {

// Ranks equal-volume candidates: less imbalance, then closer to the
// reference, then the lower price.
inline bool better_level(const AuctionLevel& a, const AuctionLevel& b, Price reference) {
  if (a.volume() != b.volume()) return a.volume() > b.volume();
  if (a.imbalance() != b.imbalance()) return a.imbalance() < b.imbalance();
  const auto da = std::llabs(a.price.ticks - reference.ticks);
  const auto db = std::llabs(b.price.ticks - reference.ticks);
  if (da != db) return da < db;
  return a.price < b.price;
}

} // namespace detail

// Demand/supply at every distinct limit price present, ascending by price.
inline std::vector<AuctionLevel> auction_levels(std::span<const Order> orders) {
  std::vector<Price> prices;
  Quantity market_buy = 0;
  Quantity market_sell = 0;
  for (const Order& o : orders) {
    if (o.is_market()) (o.side == Side::buy ? market_buy : market_sell) += o.remaining;
    else prices.push_back(o.limit_price);
  }
  std::sort(prices.begin(), prices.end());
  prices.erase(std::unique(prices.begin(), prices.end()), prices.end());

  std::vector<Quantity> buy_at(prices.size(), 0);
  std::vector<Quantity> sell_at(prices.size(), 0);
  for (const Order& o : orders) {
    if (o.is_market()) continue;
    auto idx = std::lower_bound(prices.begin(), prices.end(), o.limit_price) - prices.begin();
    (o.side == Side::buy ? buy_at : sell_at)[idx] += o.remaining;
  }

  std::vector<AuctionLevel> levels(prices.size());
  Quantity supply = market_sell;
  for (std::size_t i = 0; i < prices.size(); ++i) {
    supply += sell_at[i];
    levels[i].price = prices[i];
    levels[i].supply = supply;
  }
  Quantity demand = market_buy;
  for (std::size_t i = prices.size(); i-- > 0;) {
    demand += buy_at[i];
    levels[i].demand = demand;
  }
  return levels;
}

// Clears a call auction at the volume-maximizing price. `resting` carries
// orders already on the book; they compete with the batch on equal terms.
// Fills are assigned in rank order under `rule`; every trade prints at the
// auction price on the window's closing tick.
inline AuctionOutcome clear(const AuctionBatch& batch, PriorityRule rule,
                            std::span<const Order> resting = {}, EventLog* log = nullptr,
                            Phase phase = Phase::open_auction) {
  std::vector<Order> all(resting.begin(), resting.end());
  all.insert(all.end(), batch.orders().begin(), batch.orders().end());

  AuctionOutcome out;
  const auto levels = auction_levels(all);
  const AuctionLevel* best = nullptr;
  for (const auto& lv : levels) {
    if (lv.volume() <= 0) continue;
    if (!best || detail::better_level(lv, *best, batch.reference_price())) best = &lv;
  }

  auto keep_limits = [&] {
    for (const Order& o : all)
      if (!o.is_market() && o.remaining > 0) out.residue.push_back(o);
  };
  if (!best) {
    keep_limits();
    return out;
  }

  const Price px = best->price;
  out.price = px;
  out.volume = best->volume();

  std::vector<Order*> buys;
  std::vector<Order*> sells;
  for (Order& o : all) {
    if (o.side == Side::buy && (o.is_market() || o.limit_price >= px)) buys.push_back(&o);
    if (o.side == Side::sell && (o.is_market() || o.limit_price <= px)) sells.push_back(&o);
  }
  const PriorityOrder rank{rule};
  auto by_rank = [&](const Order* a, const Order* b) { return rank(*a, *b); };
  std::sort(buys.begin(), buys.end(), by_rank);
  std::sort(sells.begin(), sells.end(), by_rank);

  const Tick t = batch.window_end();
  Quantity left = out.volume;
  std::size_t bi = 0;
  std::size_t si = 0;
  while (left > 0) {
    Order& b = *buys[bi];
    Order& s = *sells[si];
    const Quantity q = std::min({left, b.remaining, s.remaining});
    const bool buy_is_maker = b.arrival_tick < s.arrival_tick;
    const Order& maker = buy_is_maker ? b : s;
    const Order& taker = buy_is_maker ? s : b;
    Trade tr{px, q, t, maker.id, taker.id, maker.side};
    out.trades.push_back(tr);
    if (log) log->record(phase, tr);
    b.remaining -= q;
    s.remaining -= q;
    left -= q;
    if (b.remaining == 0) ++bi;
    if (s.remaining == 0) ++si;
  }
  keep_limits();
  return out;
}

} // namespace wtsim
