#include <gtest/gtest.h>

#include "wtsim/priority.hpp"

using namespace wtsim;

namespace {

Order buy(std::int64_t px, Tick t, Quantity q) { return Order::limit(Side::buy, Price{px}, q, t); }
Order sell(std::int64_t px, Tick t, Quantity q) { return Order::limit(Side::sell, Price{px}, q, t); }

} // namespace

TEST(Priority, PtqEarlierArrivalWinsAtEqualPrice) {
  EXPECT_EQ(compare(PriorityRule::ptq, buy(100, 5, 10), buy(100, 3, 90)), Precedence::b_first);
}

TEST(Priority, PqtLargerQuantityWinsAtEqualPrice) {
  EXPECT_EQ(compare(PriorityRule::pqt, buy(100, 5, 90), buy(100, 3, 10)), Precedence::a_first);
}

TEST(Priority, PriceDominatesUnderBothRules) {
  for (auto rule : {PriorityRule::ptq, PriorityRule::pqt}) {
    EXPECT_EQ(compare(rule, sell(99, 9, 1), sell(100, 1, 500)), Precedence::a_first);
    EXPECT_EQ(compare(rule, buy(99, 1, 500), buy(100, 9, 1)), Precedence::b_first);
  }
}

TEST(Priority, PtqBreaksTimeTiesByQuantity) {
  // Distinct ids share no tick in a real run, but the key is still total.
  Order a = buy(100, 4, 5);
  Order b = buy(100, 4, 9);
  b.id = 5;
  EXPECT_EQ(compare(PriorityRule::ptq, a, b), Precedence::b_first);
}

TEST(Priority, PqtBreaksSizeTiesByTime) {
  EXPECT_EQ(compare(PriorityRule::pqt, sell(101, 8, 5), sell(101, 2, 5)), Precedence::b_first);
}

TEST(Priority, MarketOrdersRankFirst) {
  const Order m = Order::market(Side::buy, 1, 50);
  for (auto rule : {PriorityRule::ptq, PriorityRule::pqt})
    EXPECT_EQ(compare(rule, m, buy(1000000, 1, 100)), Precedence::a_first);
}

TEST(Priority, RejectsMismatchedSides) {
  EXPECT_THROW(compare(PriorityRule::ptq, buy(100, 1, 1), sell(100, 2, 1)), ContractViolation);
}

TEST(Priority, RejectsSelfComparison) {
  const Order a = buy(100, 1, 1);
  EXPECT_THROW(compare(PriorityRule::pqt, a, a), ContractViolation);
}

TEST(Priority, StrictWeakOrderingOnSmallGrid) {
  std::vector<Order> os;
  Tick t = 1;
  for (std::int64_t px : {99, 100, 101})
    for (Quantity q : {1, 5})
      for (int rep = 0; rep < 2; ++rep) os.push_back(buy(px, t++, q));
  for (auto rule : {PriorityRule::ptq, PriorityRule::pqt}) {
    const PriorityOrder less{rule};
    for (const auto& a : os) {
      EXPECT_FALSE(less(a, a));
      for (const auto& b : os) {
        if (a.id == b.id) continue;
        EXPECT_NE(less(a, b), less(b, a));
        for (const auto& c : os)
          if (less(a, b) && less(b, c)) EXPECT_TRUE(less(a, c));
      }
    }
  }
}

TEST(Order, FactoryValidation) {
  EXPECT_THROW(Order::limit(Side::buy, Price{0}, 1, 1), ContractViolation);
  EXPECT_THROW(Order::limit(Side::buy, Price{100}, 0, 1), ContractViolation);
  EXPECT_THROW(Order::market(Side::sell, -3, 1), ContractViolation);
  const Order o = Order::limit(Side::sell, Price{100}, 7, 42);
  EXPECT_EQ(o.id, 42u);
  EXPECT_EQ(o.remaining, 7);
}

TEST(PriceType, QuantizesToTickGrid) {
  EXPECT_EQ(Price::from_value(100.004), Price{10000});
  EXPECT_EQ(Price::from_value(100.006), Price{10001});
  EXPECT_DOUBLE_EQ(Price{12345}.value(), 123.45);
}
