#include <gtest/gtest.h>

#include <cmath>

#include "builders.hpp"
#include "lobresp/error.hpp"
#include "lobresp/response/lag_grid.hpp"
#include "lobresp/response/response.hpp"
#include "lobresp/response/trajectory.hpp"

using namespace lobresp;
using namespace lobresp::test;
using namespace lobresp::response;

namespace {

const Session kSession{at_seconds(0), at_seconds(100)};

struct Day {
  std::vector<book::BookDelta> deltas;
  MidpointTrajectory trajectory;
  EventSeries trades;
};

// bid 99 / ask 101, then the ask is lifted twice: at 10 s (to 102) and at 20 s (to 105).
Day fixture() {
  std::vector<OrderEvent> events{add(at_seconds(1), 1, Side::Bid, 99), add(at_seconds(1), 2, Side::Ask, 101),
                                 add(at_seconds(1), 3, Side::Ask, 102), add(at_seconds(1), 4, Side::Ask, 105),
                                 execute(at_seconds(10), 2, 100), execute(at_seconds(20), 3, 100)};
  Day d;
  book::OrderBook b;
  d.deltas = book::replay(events, b);
  d.trajectory = MidpointTrajectory::from_deltas(Symbol("TEST"), d.deltas, kSession);
  d.trades = classify::filter_kind(classify::classify_all(d.deltas), classify::SpreadChangeKind::Trade);
  return d;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return ErrorCode::Io;
}

}  // namespace

TEST(LogReturn, UsesExactMidpoints) {
  EXPECT_DOUBLE_EQ(log_return(Midpoint::from_ticks(100), Midpoint::from_quotes(100, 101)), std::log1p(0.5 / 100));
  EXPECT_EQ(log_return(Midpoint::from_ticks(100), Midpoint::from_ticks(100)), 0.0);
  EXPECT_EQ(code_of([] { log_return(std::nullopt, Midpoint::from_ticks(1)); }), ErrorCode::UndefinedMidpoint);
  EXPECT_EQ(code_of([] { log_return(Midpoint::from_ticks(0), Midpoint::from_ticks(1)); }),
            ErrorCode::UndefinedMidpoint);
}

TEST(Trajectory, CollapsesEqualTimestamps) {
  const auto d = fixture();
  const auto& points = d.trajectory.breakpoints();
  ASSERT_EQ(points.size(), 3u);
  EXPECT_EQ(points[0].midpoint, Midpoint::from_quotes(99, 101));
  EXPECT_EQ(d.trajectory.at(at_seconds(10)), Midpoint::from_quotes(99, 102));
  EXPECT_EQ(d.trajectory.before(at_seconds(10)), Midpoint::from_quotes(99, 101));
  EXPECT_FALSE(d.trajectory.at(at_seconds(0.5)).has_value());
}

TEST(Trajectory, RejectsUnorderedBreakpoints) {
  EXPECT_EQ(code_of([] {
              MidpointTrajectory(Symbol("X"), kSession, {{at_seconds(2), std::nullopt}, {at_seconds(1), std::nullopt}});
            }),
            ErrorCode::InvalidConfig);
}

TEST(SelfResponse, PhysicalHandFixture) {
  const auto d = fixture();
  std::vector<EventSeries> days{d.trades};
  std::vector<MidpointTrajectory> traj{d.trajectory};
  const std::vector<std::int64_t> lags{5, 15, 85, 95};
  const auto c = self_response_physical(days, traj, lags);
  const double first5 = std::log1p(1.0 / 200.0);
  const double first15 = std::log1p(4.0 / 200.0);
  const double second = std::log1p(3.0 / 201.0);
  EXPECT_DOUBLE_EQ(*c.values[0], (first5 + second) / 2);
  EXPECT_DOUBLE_EQ(*c.values[1], (first15 + second) / 2);
  EXPECT_DOUBLE_EQ(*c.values[2], first15);  // 20 + 85 leaves the session
  EXPECT_FALSE(c.values[3].has_value());
  EXPECT_EQ(c.counts, (std::vector<std::uint64_t>{2, 2, 1, 0}));
  EXPECT_EQ(c.boundary_skips, (std::vector<std::uint64_t>{0, 0, 1, 2}));
  EXPECT_EQ(c.events, 2u);
}

TEST(SelfResponse, EventScaleHandFixture) {
  const auto d = fixture();
  std::vector<EventSeries> days{d.trades};
  const std::vector<std::int64_t> lags{1, 2};
  const auto c = self_response_event_scale(days, kSession, lags);
  EXPECT_DOUBLE_EQ(*c.values[0], std::log1p(1.0 / 200.0));
  EXPECT_FALSE(c.values[1].has_value());
  EXPECT_EQ(c.counts[0], 1u);
}

TEST(SelfResponse, EventsOutsideTheSessionAreSkipped) {
  const auto d = fixture();
  std::vector<EventSeries> days{d.trades};
  const Session late{at_seconds(15), at_seconds(100)};
  const auto c = self_response_event_scale(days, late, std::vector<std::int64_t>{1});
  EXPECT_EQ(c.counts[0], 0u);
  EXPECT_EQ(c.boundary_skips[0], 2u);
}

TEST(SelfResponse, ErrorsOnEmptyInput) {
  const auto d = fixture();
  std::vector<EventSeries> none{EventSeries{}};
  std::vector<MidpointTrajectory> traj{d.trajectory};
  const std::vector<std::int64_t> lags{1};
  EXPECT_EQ(code_of([&] { self_response_physical(none, traj, lags); }), ErrorCode::NoEvents);
  EXPECT_EQ(code_of([&] { self_response_event_scale(none, kSession, lags); }), ErrorCode::NoEvents);
  std::vector<EventSeries> days{d.trades};
  EXPECT_EQ(code_of([&] { self_response_physical(days, traj, std::vector<std::int64_t>{}); }), ErrorCode::EmptyGrid);
}

TEST(LagGrid, LogarithmicWithEveryIntegerUpToTen) {
  const auto g = log_lag_grid(1000);
  EXPECT_EQ(g.front(), 1);
  EXPECT_EQ(g.back(), 1000);
  for (std::int64_t k = 1; k <= 10; ++k) EXPECT_EQ(g[k - 1], k);
  EXPECT_TRUE(std::is_sorted(g.begin(), g.end()));
  EXPECT_EQ(std::adjacent_find(g.begin(), g.end()), g.end());
  EXPECT_EQ(log_lag_grid(1).size(), 1u);
  EXPECT_EQ(log_lag_grid(37).back(), 37);
}

TEST(LagGrid, ParseList) {
  EXPECT_EQ(parse_lag_list("1,2,50,500"), (std::vector<std::int64_t>{1, 2, 50, 500}));
  EXPECT_EQ(code_of([] { parse_lag_list("3,2"); }), ErrorCode::InvalidConfig);
  EXPECT_EQ(code_of([] { parse_lag_list("1,x"); }), ErrorCode::InvalidConfig);
  EXPECT_EQ(code_of([] { validate_grid(std::vector<std::int64_t>{}); }), ErrorCode::EmptyGrid);
}

TEST(CurveCsv, EmptyValuesStayEmpty) {
  ResponseCurve c;
  c.lags = {1, 2};
  c.values = {0.5, std::nullopt};
  c.counts = {3, 0};
  std::ostringstream os;
  write_curve_header(os);
  write_curve_rows(os, "trade", TimeScale::Physical, c);
  EXPECT_EQ(os.str(), "kind,scale,tau,value,count\ntrade,physical,1,0.5,3\ntrade,physical,2,,0\n");
}
