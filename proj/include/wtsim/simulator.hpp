#pragma once
#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "wtsim/auction.hpp"
#include "wtsim/event_log.hpp"
#include "wtsim/order_book.hpp"
#include "wtsim/order_flow.hpp"
#include "wtsim/rng.hpp"

namespace wtsim {

enum class SampleKind : std::uint8_t { bid, ask, absolute };

constexpr std::string_view to_string(SampleKind k) noexcept {
  switch (k) {
    case SampleKind::bid: return "bid";
    case SampleKind::ask: return "ask";
    case SampleKind::absolute: return "absolute";
  }
  return "?";
}

// One waiting time: ticks between an order's arrival and a fill it took part in.
struct PendingSample {
  SampleKind kind{SampleKind::absolute};
  Tick duration{0};
  Tick execution_tick{0};
  Phase phase{Phase::continuous};

  friend bool operator==(const PendingSample&, const PendingSample&) = default;
};

// Bid, ask and absolute waiting times of one fill:
//   bid = t - t_bid, ask = t - t_ask, absolute = t - min(t_bid, t_ask).
inline std::array<PendingSample, 3> record_pending(const Trade& tr, Tick maker_arrival,
                                                   Tick taker_arrival,
                                                   Phase phase = Phase::continuous) {
  if (tr.tick < maker_arrival || tr.tick < taker_arrival)
    throw ContractViolation("record_pending: fill precedes an order's arrival");
  if (phase == Phase::continuous && taker_arrival != tr.tick)
    throw ContractViolation("record_pending: continuous fills happen on the taker's tick");
  const Tick bid = tr.maker_side == Side::buy ? maker_arrival : taker_arrival;
  const Tick ask = tr.maker_side == Side::buy ? taker_arrival : maker_arrival;
  return {PendingSample{SampleKind::bid, tr.tick - bid, tr.tick, phase},
          PendingSample{SampleKind::ask, tr.tick - ask, tr.tick, phase},
          PendingSample{SampleKind::absolute, tr.tick - std::min(bid, ask), tr.tick, phase}};
}

// Day orders leave the book at the close; good-till-run orders stay until filled.
enum class OrderValidity : std::uint8_t { day, good_till_run };

constexpr std::string_view to_string(OrderValidity v) noexcept {
  return v == OrderValidity::day ? "day" : "good_till_run";
}

struct SimConfig {
  std::size_t n_agents = 1000;
  std::size_t n_days = 100;
  std::size_t turns_per_day = 12;
  double initial_price = 100.0;
  std::uint64_t seed = 1;
  bool auctions = false;
  Scenario scenario{};
  double tick_size = kDefaultTickSize;
  PriceParams price_params{};
  QuantityParams quantity_params{};
  OrderValidity validity = OrderValidity::day;
  bool record_events = false;

  void validate() const {
    if (n_agents < 1 || n_days < 1 || turns_per_day < 1)
      throw ConfigError("agents, days and turns must all be >= 1");
    if (!(tick_size > 0)) throw ConfigError("tick size must be positive");
    if (!(initial_price > 0) || Price::from_value(initial_price, tick_size).ticks < 1)
      throw ConfigError("initial price must be positive on the tick grid");
    if (quantity_params.uniform_lo < 1 || quantity_params.uniform_hi < quantity_params.uniform_lo)
      throw ConfigError("uniform quantity range must satisfy 1 <= lo <= hi");
    if (!(quantity_params.gaussian_sd > 0) ||
        quantity_params.gaussian_mean + 5 * quantity_params.gaussian_sd < 1)
      throw ConfigError("gaussian quantity parameters leave no mass above one share");
    if (price_params.max_attempts < 1) throw ConfigError("price redraw limit must be >= 1");
  }
};

// Collection window of one call auction, in global ticks.
struct AuctionWindow {
  Phase phase{Phase::open_auction};
  std::size_t day{0};
  Tick start{0};
  Tick end{0};
  std::optional<Price> price;
};

struct RunResult {
  std::string label;
  std::uint64_t seed{0};
  std::vector<Trade> trades;
  std::vector<Phase> trade_phases;  // parallel to trades
  std::vector<PendingSample> pending_samples;
  std::vector<Price> daily_closing_prices;
  std::vector<std::size_t> daily_trade_counts;
  std::vector<AuctionWindow> auction_windows;
  std::size_t total_orders{0};
  std::size_t expired_orders{0};
  Tick final_tick{0};
  EventLog events;  // filled only when SimConfig::record_events is set

  friend bool operator==(const RunResult& a, const RunResult& b) {
    return a.label == b.label && a.seed == b.seed && a.trades == b.trades &&
           a.trade_phases == b.trade_phases && a.pending_samples == b.pending_samples &&
           a.daily_closing_prices == b.daily_closing_prices &&
           a.daily_trade_counts == b.daily_trade_counts && a.total_orders == b.total_orders &&
           a.expired_orders == b.expired_orders &&
           a.final_tick == b.final_tick;
  }
};

// Uniformly random activation order for one round.
inline std::vector<std::uint32_t> activation_order(std::size_t n_agents, Rng& rng) {
  std::vector<std::uint32_t> order(n_agents);
  std::iota(order.begin(), order.end(), 0u);
  std::shuffle(order.begin(), order.end(), rng.engine());
  return order;
}

// Drives one complete market history. Strictly sequential; the result is a
// pure function of the config.
class Simulator {
public:
  explicit Simulator(SimConfig cfg)
    : cfg_((cfg.validate(), std::move(cfg))),
      flow_{cfg_.price_params, cfg_.quantity_params, cfg_.tick_size},
      orders_rng_(Rng(cfg_.seed).split(1)), schedule_rng_(Rng(cfg_.seed).split(2)),
      book_(cfg_.scenario.rule(), Price::from_value(cfg_.initial_price, cfg_.tick_size),
            cfg_.record_events ? &result_.events : nullptr) {
    result_.label = cfg_.scenario.label();
    result_.seed = cfg_.seed;
  }

  Simulator(const Simulator&) = delete;
  Simulator& operator=(const Simulator&) = delete;

  RunResult run() && {
    Price close = book_.last_price();
    for (std::size_t day = 0; day < cfg_.n_days; ++day) {
      const std::size_t trades_before = result_.trades.size();
      if (cfg_.auctions) call_auction(day, Phase::open_auction);
      for (std::size_t turn = 0; turn < cfg_.turns_per_day; ++turn) continuous_round();
      if (cfg_.auctions) call_auction(day, Phase::close_auction);
      if (cfg_.validity == OrderValidity::day) result_.expired_orders += book_.drain().size();

      const std::size_t traded = result_.trades.size() - trades_before;
      if (traded > 0) close = result_.trades.back().price;
      result_.daily_closing_prices.push_back(close);
      result_.daily_trade_counts.push_back(traded);
    }
    result_.final_tick = tick_;
    return std::move(result_);
  }

private:
  void continuous_round() {
    for ([[maybe_unused]] auto agent : activation_order(cfg_.n_agents, schedule_rng_)) {
      ++tick_;
      auto order = make_order(cfg_.scenario, book_.last_price(), tick_, orders_rng_, flow_);
      if (!order) continue;
      ++result_.total_orders;
      for (const Trade& t : book_.submit(*order).trades) add_trade(t, Phase::continuous);
    }
  }

  void call_auction(std::size_t day, Phase phase) {
    AuctionBatch batch(tick_ + 1, tick_ + cfg_.n_agents, book_.last_price());
    for ([[maybe_unused]] auto agent : activation_order(cfg_.n_agents, schedule_rng_)) {
      ++tick_;
      auto order = make_order(cfg_.scenario, book_.last_price(), tick_, orders_rng_, flow_);
      if (!order) continue;
      ++result_.total_orders;
      batch.collect(*order);
      if (cfg_.record_events) result_.events.record(phase, *order);
    }
    book_.advance_clock(tick_);

    const std::vector<Order> resting = book_.drain();
    AuctionOutcome out = clear(batch, cfg_.scenario.rule(), resting,
                               cfg_.record_events ? &result_.events : nullptr, phase);
    book_.reseed(out.residue, out.price);
    for (const Trade& t : out.trades) add_trade(t, phase);
    result_.auction_windows.push_back(
      AuctionWindow{phase, day, batch.window_start(), batch.window_end(), out.price});
  }

  void add_trade(const Trade& t, Phase phase) {
    result_.trades.push_back(t);
    result_.trade_phases.push_back(phase);
    // Order ids are arrival ticks.
    for (const auto& s : record_pending(t, t.maker_id, t.taker_id, phase))
      result_.pending_samples.push_back(s);
  }

  SimConfig cfg_;
  OrderFlowParams flow_;
  Rng orders_rng_;
  Rng schedule_rng_;
  RunResult result_;
  Book book_;
  Tick tick_{0};
};

inline RunResult run(const SimConfig& cfg) { return Simulator(cfg).run(); }

} // namespace wtsim
