#include "lobresp/response/trajectory.hpp"

#include <algorithm>

#include "lobresp/error.hpp"

namespace lobresp::response {

MidpointTrajectory::MidpointTrajectory(Symbol symbol, Session session, std::vector<Breakpoint> breakpoints)
    : symbol_(symbol), session_(session), breakpoints_(std::move(breakpoints)) {
  for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
    if (breakpoints_[i].time <= breakpoints_[i - 1].time) {
      throw Error(ErrorCode::InvalidConfig, "trajectory breakpoints must be strictly increasing in time");
    }
  }
}

MidpointTrajectory MidpointTrajectory::from_deltas(Symbol symbol, std::span<const book::BookDelta> deltas,
                                                   Session session) {
  std::vector<Breakpoint> points;
  std::optional<Midpoint> current;
  for (const auto& d : deltas) {
    const Timestamp t = d.timestamp();
    const auto& m = d.midpoint_after;
    if (!points.empty() && points.back().time == t) {
      points.back().midpoint = m;
      // Changes that cancel out within one timestamp leave no breakpoint.
      const std::optional<Midpoint> previous =
          points.size() > 1 ? points[points.size() - 2].midpoint : std::optional<Midpoint>{};
      if (m == previous) points.pop_back();
    } else if (m != current) {
      points.push_back({t, m});
    }
    current = m;
  }
  MidpointTrajectory out;
  out.symbol_ = symbol;
  out.session_ = session;
  out.breakpoints_ = std::move(points);
  return out;
}

std::optional<Midpoint> MidpointTrajectory::at(Timestamp t) const noexcept {
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t,
                             [](Timestamp value, const Breakpoint& b) { return value < b.time; });
  if (it == breakpoints_.begin()) return std::nullopt;
  return std::prev(it)->midpoint;
}

std::optional<Midpoint> MidpointTrajectory::before(Timestamp t) const noexcept {
  auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), t,
                             [](const Breakpoint& b, Timestamp value) { return b.time < value; });
  if (it == breakpoints_.begin()) return std::nullopt;
  return std::prev(it)->midpoint;
}

}  // namespace lobresp::response
