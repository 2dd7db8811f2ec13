#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "support/oracles.hpp"
#include "wtsim/auction.hpp"

using namespace wtsim;

namespace {

Order buy(std::int64_t px, Quantity q, Tick t) { return Order::limit(Side::buy, Price{px}, q, t); }
Order sell(std::int64_t px, Quantity q, Tick t) { return Order::limit(Side::sell, Price{px}, q, t); }

AuctionBatch batch_of(const std::vector<Order>& os, Price ref = Price{100}) {
  Tick hi = 1;
  for (const auto& o : os) hi = std::max(hi, o.arrival_tick);
  AuctionBatch b(1, hi, ref);
  for (const auto& o : os) b.collect(o);
  return b;
}

Quantity traded(const AuctionOutcome& out) {
  Quantity q = 0;
  for (const auto& t : out.trades) q += t.quantity;
  return q;
}

} // namespace

TEST(Auction, CollectDoesNotMatch) {
  AuctionBatch b(1, 1000, Price{100});
  b.collect(buy(100, 5, 1));
  EXPECT_EQ(b.size(), 1u);
}

TEST(Auction, CollectsAThousandOrders) {
  std::mt19937_64 g(1);
  AuctionBatch b(1, 1000, Price{100});
  for (Tick t = 1; t <= 1000; ++t) b.collect(oracle::random_order(g, t));
  EXPECT_EQ(b.size(), 1000u);
}

TEST(Auction, RejectsTicksOutsideWindow) {
  AuctionBatch b(10, 20, Price{100});
  EXPECT_THROW(b.collect(buy(100, 1, 9)), ContractViolation);
  EXPECT_THROW(b.collect(buy(100, 1, 21)), ContractViolation);
  EXPECT_NO_THROW(b.collect(buy(100, 1, 20)));
}

TEST(Auction, EquidistantCandidatesResolveToLowerPrice) {
  const auto out = clear(batch_of({buy(101, 10, 1), sell(99, 10, 2)}), PriorityRule::ptq);
  ASSERT_TRUE(out.price);
  EXPECT_EQ(*out.price, Price{99});
  ASSERT_EQ(out.trades.size(), 1u);
  EXPECT_EQ(out.trades[0].quantity, 10);
  EXPECT_TRUE(out.residue.empty());
}

TEST(Auction, NearestCandidateToReferenceWins) {
  const auto out =
    clear(batch_of({buy(101, 10, 1), sell(99, 10, 2)}, Price{101}), PriorityRule::ptq);
  EXPECT_EQ(out.price, Price{101});
}

TEST(Auction, NoCrossMeansNoPrice) {
  const auto out = clear(batch_of({buy(100, 5, 1), sell(102, 5, 2)}), PriorityRule::ptq);
  EXPECT_FALSE(out.price);
  EXPECT_TRUE(out.trades.empty());
  EXPECT_EQ(out.residue.size(), 2u);
}

TEST(Auction, MaximizesVolumeAndFillsBuysInRankOrder) {
  const auto out =
    clear(batch_of({buy(101, 10, 1), buy(100, 10, 2), sell(100, 15, 3)}), PriorityRule::ptq);
  EXPECT_EQ(out.price, Price{100});
  EXPECT_EQ(out.volume, 15);
  ASSERT_EQ(out.trades.size(), 2u);
  EXPECT_EQ(out.trades[0].quantity, 10);
  EXPECT_EQ(out.trades[1].quantity, 5);
  ASSERT_EQ(out.residue.size(), 1u);
  EXPECT_EQ(out.residue[0].id, 2u);
  EXPECT_EQ(out.residue[0].remaining, 5);
}

TEST(Auction, MarketOrdersCrossAtAnyPrice) {
  const auto out =
    clear(batch_of({Order::market(Side::buy, 4, 1), sell(120, 4, 2)}), PriorityRule::pqt);
  EXPECT_EQ(out.price, Price{120});
  EXPECT_EQ(out.volume, 4);
}

TEST(Auction, MarketOrdersAloneHaveNoPrice) {
  const auto out = clear(batch_of({Order::market(Side::buy, 4, 1), Order::market(Side::sell, 4, 2)}),
                         PriorityRule::pqt);
  EXPECT_FALSE(out.price);
  EXPECT_TRUE(out.residue.empty());
}

TEST(Auction, RandomBatchesAreVolumeOptimal) {
  std::mt19937_64 g(5);
  for (int n = 0; n < 1000; ++n) {
    const int len = std::uniform_int_distribution<int>(1, 12)(g);
    std::vector<Order> os;
    for (int i = 1; i <= len; ++i) os.push_back(oracle::random_order(g, static_cast<Tick>(i)));
    const auto out = clear(batch_of(os), n % 2 ? PriorityRule::ptq : PriorityRule::pqt);
    const Quantity best = oracle::max_auction_volume(os);
    ASSERT_EQ(out.volume, best);
    ASSERT_EQ(traded(out), best);
    if (out.price) ASSERT_EQ(oracle::volume_at(os, *out.price), best);
  }
}

TEST(Auction, TradesShareOnePriceAndTheWindowEndTick) {
  std::mt19937_64 g(8);
  for (int n = 0; n < 300; ++n) {
    std::vector<Order> os;
    for (Tick t = 1; t <= 20; ++t) os.push_back(oracle::random_order(g, t));
    AuctionBatch b(1, 50, Price{100});
    for (const auto& o : os) b.collect(o);
    const auto out = clear(b, PriorityRule::ptq);
    for (const auto& t : out.trades) {
      ASSERT_EQ(t.price, *out.price);
      ASSERT_EQ(t.tick, 50u);
    }
  }
}

TEST(Auction, ResidueKeepsTicksAndDoesNotCross) {
  std::mt19937_64 g(9);
  for (int n = 0; n < 1000; ++n) {
    std::vector<Order> os;
    std::map<OrderId, Tick> ticks;
    for (Tick t = 1; t <= 15; ++t) {
      os.push_back(oracle::random_order(g, t));
      ticks[t] = t;
    }
    const auto out = clear(batch_of(os), PriorityRule::pqt);
    std::optional<Price> hb, la;
    for (const auto& o : out.residue) {
      ASSERT_FALSE(o.is_market());
      ASSERT_EQ(o.arrival_tick, ticks.at(o.id));
      if (o.side == Side::buy) hb = hb ? std::max(*hb, o.limit_price) : o.limit_price;
      else la = la ? std::min(*la, o.limit_price) : o.limit_price;
    }
    if (hb && la) ASSERT_LT(*hb, *la);
  }
}

TEST(Auction, PriceIndependentOfArrivalPermutation) {
  std::mt19937_64 g(13);
  for (int n = 0; n < 300; ++n) {
    std::vector<Order> os;
    for (Tick t = 1; t <= 10; ++t) os.push_back(oracle::random_order(g, t));
    const auto ref = clear(batch_of(os), PriorityRule::ptq);
    auto shuffled = os;
    std::shuffle(shuffled.begin(), shuffled.end(), g);
    AuctionBatch b(1, 10, Price{100});
    for (const auto& o : shuffled) b.collect(o);
    const auto out = clear(b, PriorityRule::ptq);
    ASSERT_EQ(out.price, ref.price);
    ASSERT_EQ(out.trades, ref.trades);
  }
}

TEST(Auction, RestingOrdersJoinTheCall) {
  const std::vector<Order> resting{buy(100, 3, 1)};
  AuctionBatch b(5, 8, Price{100});
  b.collect(sell(100, 3, 6));
  const auto out = clear(b, PriorityRule::ptq, resting);
  EXPECT_EQ(out.volume, 3);
  ASSERT_EQ(out.trades.size(), 1u);
  EXPECT_EQ(out.trades[0].maker_id, 1u);
  EXPECT_EQ(out.trades[0].tick, 8u);
}
