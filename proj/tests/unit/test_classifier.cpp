#include <gtest/gtest.h>

#include "builders.hpp"
#include "lobresp/classify/classifier.hpp"
#include "lobresp/error.hpp"
#include "naive_classifier.hpp"

using namespace lobresp;
using namespace lobresp::test;
using classify::SpreadChangeKind;

namespace {

std::vector<OrderEvent> base_book() {
  return {add(at_seconds(1), 1, Side::Bid, 99), add(at_seconds(1), 2, Side::Bid, 98),
          add(at_seconds(1), 3, Side::Ask, 102), add(at_seconds(1), 4, Side::Ask, 103)};
}

std::vector<classify::SpreadChangeEvent> changes_after(std::vector<OrderEvent> tail, bool merge = true) {
  auto events = base_book();
  events.insert(events.end(), tail.begin(), tail.end());
  book::OrderBook b;
  const auto deltas = book::replay(events, b);
  auto out = classify::classify_all(deltas);
  return merge ? classify::aggregate_trades(out) : out;
}

}  // namespace

TEST(Classify, TradeAtTheAskIsPositive) {
  const auto c = changes_after({execute(at_seconds(2), 3, 100)});
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].kind, SpreadChangeKind::Trade);
  EXPECT_EQ(c[0].sign, 1);
  EXPECT_EQ(c[0].midpoint_before, Midpoint::from_quotes(99, 102));
  EXPECT_EQ(c[0].midpoint_after, Midpoint::from_quotes(99, 103));
}

TEST(Classify, DeletionAtTheBidIsNegative) {
  const auto c = changes_after({remove(at_seconds(2), 1)});
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].kind, SpreadChangeKind::Deletion);
  EXPECT_EQ(c[0].sign, -1);
}

TEST(Classify, FullCancelCountsAsDeletion) {
  const auto c = changes_after({cancel(at_seconds(2), 3, 100)});
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].kind, SpreadChangeKind::Deletion);
  EXPECT_EQ(c[0].sign, 1);
}

TEST(Classify, PlacementInsideTheSpread) {
  const auto c = changes_after({add(at_seconds(2), 9, Side::Ask, 101)});
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].kind, SpreadChangeKind::Placement);
  EXPECT_EQ(c[0].sign, 1);
}

TEST(Classify, PlacementOnAnEvenSpreadMidpointTakesItsSide) {
  // bid 99, ask 101: midpoint 100 exactly
  std::vector<OrderEvent> events{add(at_seconds(1), 1, Side::Bid, 99), add(at_seconds(1), 2, Side::Ask, 101),
                                 add(at_seconds(2), 3, Side::Bid, 100)};
  book::OrderBook b;
  auto c = classify::classify_all(book::replay(events, b));
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].sign, -1);

  events.back().side = Side::Ask;
  book::OrderBook b2;
  c = classify::classify_all(book::replay(events, b2));
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].sign, 1);
}

TEST(Classify, QuietEventsAreNotSpreadChanges) {
  const auto c = changes_after({add(at_seconds(2), 9, Side::Bid, 97), remove(at_seconds(3), 2),
                                execute(at_seconds(4), 1, 50), add(at_seconds(5), 10, Side::Ask, 102)});
  EXPECT_TRUE(c.empty());
}

TEST(Classify, UndefinedMidpointBeforeIsSkipped) {
  std::vector<OrderEvent> events{add(at_seconds(1), 1, Side::Bid, 99), add(at_seconds(2), 2, Side::Ask, 101)};
  book::OrderBook b;
  EXPECT_TRUE(classify::classify_all(book::replay(events, b)).empty());
}

TEST(Classify, ReplaceLegsAreJudgedSeparately) {
  // Best bid 99 moves to 100: the delete leg drops the bid to 98, the add leg lifts it to 100.
  const auto c = changes_after({replace(at_seconds(2), 1, 9, 100, 100)});
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0].kind, SpreadChangeKind::Deletion);
  EXPECT_EQ(c[0].sign, -1);
  EXPECT_EQ(c[1].kind, SpreadChangeKind::Placement);
  EXPECT_EQ(c[1].midpoint_before, Midpoint::from_quotes(98, 102));
  EXPECT_EQ(c[1].sign, -1);
}

TEST(AggregateTrades, SweepBecomesOneTrade) {
  auto tail = std::vector<OrderEvent>{add(at_seconds(1.5), 5, Side::Ask, 104), execute(at_seconds(2), 3, 100),
                                      execute(at_seconds(2), 4, 100), execute(at_seconds(2), 5, 10)};
  const auto raw = changes_after(tail, false);
  EXPECT_EQ(raw.size(), 2u);
  const auto merged = changes_after(tail);
  ASSERT_EQ(merged.size(), 1u);
  EXPECT_EQ(merged[0].midpoint_before, Midpoint::from_quotes(99, 102));
  EXPECT_EQ(merged[0].midpoint_after, Midpoint::from_quotes(99, 104));
}

TEST(AggregateTrades, DifferentTimestampsStaySeparate) {
  const auto merged = changes_after({execute(at_seconds(2), 3, 100), execute(at_seconds(3), 4, 100)});
  EXPECT_EQ(merged.size(), 2u);
}

TEST(LabelAll, CountsQuietEventsToo) {
  auto events = base_book();
  events.push_back(add(at_seconds(2), 9, Side::Bid, 97));
  events.push_back(add(at_seconds(3), 10, Side::Ask, 101));
  book::OrderBook b;
  const auto deltas = book::replay(events, b);
  const auto all = classify::label_all(deltas, SpreadChangeKind::Placement);
  ASSERT_EQ(all.size(), 3u);  // the first three adds see no midpoint
  EXPECT_FALSE(all[1].quote_changed);
  EXPECT_EQ(all[1].sign, -1);
  EXPECT_TRUE(all[2].quote_changed);
}

TEST(RelativeAmounts, FourEventFixture) {
  const auto c = changes_after({add(at_seconds(2), 9, Side::Ask, 101), add(at_seconds(3), 10, Side::Bid, 100),
                                remove(at_seconds(4), 10), execute(at_seconds(5), 9, 100)});
  const auto a = classify::relative_amounts(c);
  EXPECT_EQ(a.total(), 4u);
  EXPECT_EQ(a.placement_share(), 0.5);
  EXPECT_EQ(a.deletion_share(), 0.25);
  EXPECT_EQ(a.trade_share(), 0.25);
  EXPECT_EQ(classify::balance_deviation(a), 0.0);
}

TEST(RelativeAmounts, EmptyListIsAnError) {
  try {
    classify::relative_amounts({});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyEventList);
  }
}

TEST(RelativeAmounts, CountsAlwaysAddUp) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto a = classify::relative_amounts(classified(stream_of(seed, 4000)));
    EXPECT_EQ(a.placements + a.deletions + a.trades, a.total());
  }
}

TEST(Classify, MatchesNaiveClassifierOnGeneratedStreams) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto events = stream_of(seed, 5000);
    EXPECT_EQ(classified(events), oracle::spread_changes(events)) << "seed " << seed;
  }
}

TEST(KindNames, RoundTrip) {
  for (auto k : {SpreadChangeKind::Trade, SpreadChangeKind::Deletion, SpreadChangeKind::Placement}) {
    EXPECT_EQ(classify::spread_change_kind_from_string(classify::to_string(k)), k);
  }
  EXPECT_FALSE(classify::spread_change_kind_from_string("quote").has_value());
}
