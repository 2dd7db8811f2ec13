#include <gtest/gtest.h>

#include "support/oracles.hpp"
#include "wtsim/simulator.hpp"

using namespace wtsim;

namespace {

SimConfig small(const char* label, std::uint64_t seed = 1) {
  SimConfig c;
  c.n_agents = 100;
  c.n_days = 5;
  c.turns_per_day = 12;
  c.scenario = parse_scenario_label(label);
  c.seed = seed;
  return c;
}

} // namespace

TEST(PendingTime, BidBeforeAsk) {
  const Trade t{Price{100}, 1, 25, 10, 25, Side::buy};
  const auto s = record_pending(t, 10, 25);
  EXPECT_EQ(s[0].kind, SampleKind::bid);
  EXPECT_EQ(s[0].duration, 15u);
  EXPECT_EQ(s[1].kind, SampleKind::ask);
  EXPECT_EQ(s[1].duration, 0u);
  EXPECT_EQ(s[2].kind, SampleKind::absolute);
  EXPECT_EQ(s[2].duration, 15u);
}

TEST(PendingTime, AuctionFillMeasuredToClearingTick) {
  const Trade t{Price{100}, 1, 1000, 300, 650, Side::sell};
  const auto s = record_pending(t, 300, 650, Phase::open_auction);
  EXPECT_EQ(s[1].duration, 700u);
  EXPECT_EQ(s[0].duration, 350u);
  EXPECT_EQ(s[2].duration, 700u);
}

TEST(PendingTime, EachFillOfARestingOrderIsASample) {
  const auto a = record_pending(Trade{Price{100}, 1, 30, 20, 30, Side::sell}, 20, 30);
  const auto b = record_pending(Trade{Price{100}, 1, 40, 20, 40, Side::sell}, 20, 40);
  EXPECT_EQ(a[1].duration, 10u);
  EXPECT_EQ(b[1].duration, 20u);
}

TEST(PendingTime, RejectsFillBeforeArrival) {
  EXPECT_THROW(record_pending(Trade{Price{100}, 1, 5, 10, 5, Side::buy}, 10, 5),
               ContractViolation);
  EXPECT_THROW(record_pending(Trade{Price{100}, 1, 50, 10, 40, Side::buy}, 10, 40),
               ContractViolation);
}

TEST(Simulator, TwoAgentsOneTurn) {
  SimConfig c;
  c.n_agents = 2;
  c.n_days = 1;
  c.turns_per_day = 1;
  const RunResult r = run(c);
  EXPECT_LE(r.total_orders, 2u);
  EXPECT_EQ(r.final_tick, 2u);
}

TEST(Simulator, TickBudgetPerDay) {
  for (bool auctions : {false, true}) {
    SimConfig c = small("AU U MI");
    c.auctions = auctions;
    const RunResult r = run(c);
    const Tick per_day = c.n_agents * (c.turns_per_day + (auctions ? 2 : 0));
    EXPECT_EQ(r.final_tick, per_day * c.n_days);
    EXPECT_LE(r.total_orders, per_day * c.n_days);
    EXPECT_EQ(r.daily_closing_prices.size(), c.n_days);
    EXPECT_EQ(r.auction_windows.size(), auctions ? 2 * c.n_days : 0u);
  }
}

TEST(Simulator, OrderIdsStrictlyIncrease) {
  SimConfig c = small("MG G NY");
  c.auctions = true;
  c.record_events = true;
  const RunResult r = run(c);
  Tick last = 0;
  for (const auto& e : r.events.events())
    if (const auto* o = std::get_if<OrderEvent>(&e)) {
      ASSERT_GT(o->order.id, last);
      last = o->order.id;
    }
  EXPECT_GT(last, 0u);
}

TEST(Simulator, QuietDaysRepeatThePreviousClose) {
  // One order per day can never trade against a book emptied at each close.
  SimConfig c;
  c.n_agents = 1;
  c.turns_per_day = 1;
  c.n_days = 10;
  const RunResult r = run(c);
  EXPECT_TRUE(r.trades.empty());
  for (const auto& p : r.daily_closing_prices) EXPECT_EQ(p, Price::from_value(c.initial_price));
}

TEST(Simulator, CloseEqualsLastTradeOfTheDay) {
  const RunResult r = run(small("E U NY"));
  std::size_t k = 0;
  for (std::size_t d = 0; d < r.daily_trade_counts.size(); ++d) {
    k += r.daily_trade_counts[d];
    if (r.daily_trade_counts[d] > 0) EXPECT_EQ(r.daily_closing_prices[d], r.trades[k - 1].price);
    else if (d > 0) EXPECT_EQ(r.daily_closing_prices[d], r.daily_closing_prices[d - 1]);
  }
  EXPECT_EQ(k, r.trades.size());
}

TEST(Simulator, SameSeedSameRun) {
  SimConfig c = small("MU G MI", 3);
  c.auctions = true;
  EXPECT_EQ(run(c), run(c));
  SimConfig d = c;
  d.seed = 4;
  EXPECT_NE(run(c).trades, run(d).trades);
}

TEST(Simulator, ThreeSamplesPerFill) {
  SimConfig c = small("AU U NY");
  c.auctions = true;
  const RunResult r = run(c);
  ASSERT_FALSE(r.trades.empty());
  EXPECT_EQ(r.pending_samples.size(), 3 * r.trades.size());
  EXPECT_EQ(r.trade_phases.size(), r.trades.size());
}

TEST(Simulator, EventLogReplaysWithoutCrossing) {
  for (auto validity : {OrderValidity::day, OrderValidity::good_till_run}) {
    SimConfig c = small("MU U NY", 21);
    c.validity = validity;
    c.record_events = true;
    const RunResult r = run(c);
    const auto rep = oracle::replay(r, c);
    EXPECT_FALSE(rep.crossed);
    EXPECT_TRUE(rep.trades_match);
    EXPECT_EQ(rep.submits, r.total_orders);
    EXPECT_TRUE(rep.conserved());
  }
}

TEST(Simulator, AuctionResidueNeverCrosses) {
  SimConfig c = small("AU G MI", 8);
  c.auctions = true;
  EXPECT_NO_THROW(run(c));  // reseed throws on a crossing residue
}

TEST(Simulator, AuctionTradesAreStampedAtWindowEnd) {
  SimConfig c = small("E S MI");
  c.auctions = true;
  const RunResult r = run(c);
  std::set<Tick> ends;
  for (const auto& w : r.auction_windows) ends.insert(w.end);
  for (std::size_t i = 0; i < r.trades.size(); ++i)
    if (r.trade_phases[i] != Phase::continuous) EXPECT_TRUE(ends.count(r.trades[i].tick));
}

TEST(Simulator, InvalidConfigsAreRejectedUpFront) {
  SimConfig c;
  c.n_agents = 0;
  EXPECT_THROW(run(c), ConfigError);
  c = SimConfig{};
  c.tick_size = 0;
  EXPECT_THROW(run(c), ConfigError);
  c = SimConfig{};
  c.initial_price = -1;
  EXPECT_THROW(run(c), ConfigError);
  c = SimConfig{};
  c.quantity_params.uniform_lo = 0;
  EXPECT_THROW(run(c), ConfigError);
}

TEST(Simulator, ActivationOrderIsAPermutation) {
  Rng rng(1);
  auto o = activation_order(50, rng);
  std::sort(o.begin(), o.end());
  for (std::uint32_t i = 0; i < 50; ++i) EXPECT_EQ(o[i], i);
}
