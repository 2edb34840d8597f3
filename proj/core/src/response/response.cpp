#include "lobresp/response/response.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "kernel.hpp"
#include "lobresp/error.hpp"
#include "lobresp/response/lag_grid.hpp"

namespace lobresp::response {

std::string_view to_string(TimeScale s) noexcept { return s == TimeScale::Event ? "event" : "physical"; }

double log_return(Midpoint before, Midpoint after) {
  if (before.doubled() <= 0 || after.doubled() <= 0) {
    throw Error(ErrorCode::UndefinedMidpoint, "log return needs positive midpoints");
  }
  // log1p keeps full precision for the small relative moves we deal with.
  const auto diff = static_cast<double>(after.doubled() - before.doubled());
  return std::log1p(diff / static_cast<double>(before.doubled()));
}

double log_return(std::optional<Midpoint> before, std::optional<Midpoint> after) {
  if (!before || !after) throw Error(ErrorCode::UndefinedMidpoint, "log return of an undefined midpoint");
  return log_return(*before, *after);
}

namespace detail {

ResponseCurve empty_curve(std::span<const std::int64_t> lags) {
  ResponseCurve c;
  c.lags.assign(lags.begin(), lags.end());
  c.values.assign(lags.size(), std::nullopt);
  c.counts.assign(lags.size(), 0);
  c.boundary_skips.assign(lags.size(), 0);
  c.undefined_skips.assign(lags.size(), 0);
  return c;
}

namespace {

std::vector<std::size_t> time_order(const EventSeries& events) {
  std::vector<std::size_t> order(events.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto by_time = [&](std::size_t a, std::size_t b) { return events[a].timestamp < events[b].timestamp; };
  if (!std::is_sorted(order.begin(), order.end(), by_time)) std::stable_sort(order.begin(), order.end(), by_time);
  return order;
}

void finish(ResponseCurve& c, const std::vector<CompensatedSum>& sums) {
  for (std::size_t l = 0; l < c.lags.size(); ++l) {
    if (c.counts[l] > 0) c.values[l] = sums[l].value() / static_cast<double>(c.counts[l]);
  }
}

}  // namespace

ResponseCurve physical_response(std::span<const EventSeries> days, std::span<const MidpointTrajectory> trajectories,
                                std::span<const std::int64_t> lag_seconds) {
  validate_grid(lag_seconds);
  if (days.size() != trajectories.size()) {
    throw Error(ErrorCode::InvalidConfig, "event days and trajectory days differ in number");
  }
  ResponseCurve curve = empty_curve(lag_seconds);
  std::vector<CompensatedSum> sums(lag_seconds.size());

  for (std::size_t d = 0; d < days.size(); ++d) {
    const EventSeries& events = days[d];
    const MidpointTrajectory& traj = trajectories[d];
    const Session& session = traj.session();
    const auto& points = traj.breakpoints();
    curve.events += events.size();

    const auto order = time_order(events);
    std::vector<std::optional<Midpoint>> base(events.size());
    for (std::size_t k = 0; k < events.size(); ++k) {
      const auto& e = events[k];
      base[k] = e.symbol == traj.symbol() ? std::optional<Midpoint>(e.midpoint_before) : traj.before(e.timestamp);
    }

    for (std::size_t l = 0; l < lag_seconds.size(); ++l) {
      const Timestamp tau = lag_seconds[l] * kNanosPerSecond;
      std::size_t cursor = 0;  // first breakpoint after t + tau
      for (std::size_t k : order) {
        const auto& e = events[k];
        if (!session.contains(e.timestamp) || e.timestamp + tau > session.close) {
          ++curve.boundary_skips[l];
          continue;
        }
        const Timestamp target = e.timestamp + tau;
        while (cursor < points.size() && points[cursor].time <= target) ++cursor;
        const std::optional<Midpoint> later = cursor == 0 ? std::nullopt : points[cursor - 1].midpoint;
        if (!base[k] || !later) {
          ++curve.undefined_skips[l];
          continue;
        }
        sums[l].add(static_cast<double>(e.sign) * log_return(*base[k], *later));
        ++curve.counts[l];
      }
    }
  }
  finish(curve, sums);
  return curve;
}

}  // namespace detail

namespace {

bool any_inside(const EventSeries& events, const Session& session) {
  return std::any_of(events.begin(), events.end(),
                     [&](const SpreadChangeEvent& e) { return session.contains(e.timestamp); });
}

[[noreturn]] void no_events() { throw Error(ErrorCode::NoEvents, "no events inside the session to average over"); }

}  // namespace

namespace detail {

void require_events(std::span<const EventSeries> days, std::span<const MidpointTrajectory> trajectories) {
  for (std::size_t d = 0; d < days.size() && d < trajectories.size(); ++d) {
    if (any_inside(days[d], trajectories[d].session())) return;
  }
  no_events();
}

}  // namespace detail

namespace {

void require_events(std::span<const EventSeries> days, const Session& session) {
  for (const auto& d : days) {
    if (any_inside(d, session)) return;
  }
  no_events();
}

}  // namespace

ResponseCurve self_response_physical(std::span<const EventSeries> days,
                                     std::span<const MidpointTrajectory> trajectories,
                                     std::span<const std::int64_t> lag_seconds) {
  validate_grid(lag_seconds);
  if (days.size() != trajectories.size()) {
    throw Error(ErrorCode::InvalidConfig, "event days and trajectory days differ in number");
  }
  detail::require_events(days, trajectories);
  return detail::physical_response(days, trajectories, lag_seconds);
}

ResponseCurve self_response_all_events(std::span<const EventSeries> days,
                                       std::span<const MidpointTrajectory> trajectories,
                                       std::span<const std::int64_t> lag_seconds) {
  return self_response_physical(days, trajectories, lag_seconds);
}

ResponseCurve self_response_event_scale(std::span<const EventSeries> days, const Session& session,
                                        std::span<const std::int64_t> lag_events) {
  validate_grid(lag_events);
  require_events(days, session);
  ResponseCurve curve = detail::empty_curve(lag_events);
  std::vector<detail::CompensatedSum> sums(lag_events.size());

  for (const auto& events : days) {
    curve.events += events.size();
    std::vector<const SpreadChangeEvent*> inside;
    inside.reserve(events.size());
    for (std::size_t k : detail::time_order(events)) {
      if (session.contains(events[k].timestamp)) inside.push_back(&events[k]);
    }
    const std::size_t outside = events.size() - inside.size();
    const std::size_t n = inside.size();

    for (std::size_t l = 0; l < lag_events.size(); ++l) {
      const auto lag = static_cast<std::size_t>(lag_events[l]);
      const std::size_t pairs = lag < n ? n - lag : 0;
      curve.boundary_skips[l] += outside + (n - pairs);
      for (std::size_t k = 0; k < pairs; ++k) {
        const auto& e = *inside[k];
        sums[l].add(static_cast<double>(e.sign) * log_return(e.midpoint_before, inside[k + lag]->midpoint_before));
      }
      curve.counts[l] += pairs;
    }
  }
  detail::finish(curve, sums);
  return curve;
}

void write_curve_header(std::ostream& out, bool with_date) {
  if (with_date) out << "date,";
  out << "kind,scale,tau,value,count\n";
}

void write_curve_rows(std::ostream& out, std::string_view kind, TimeScale scale, const ResponseCurve& curve,
                      std::optional<std::string_view> date) {
  for (std::size_t l = 0; l < curve.lags.size(); ++l) {
    if (date) out << *date << ',';
    out << kind << ',' << to_string(scale) << ',' << curve.lags[l] << ',';
    if (curve.values[l]) out << format_double(*curve.values[l]);
    out << ',' << curve.counts[l] << '\n';
  }
}

}  // namespace lobresp::response
