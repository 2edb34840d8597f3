#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

#include "lobresp/classify/classifier.hpp"
#include "lobresp/response/trajectory.hpp"

namespace lobresp::response {

using classify::SpreadChangeEvent;
using classify::SpreadChangeKind;

/// One day's events of one symbol, ordered by timestamp.
using EventSeries = std::vector<SpreadChangeEvent>;

enum class TimeScale : std::uint8_t { Event, Physical };
std::string_view to_string(TimeScale s) noexcept;

/// R(tau) on a lag grid. A lag without samples has no value (not zero).
///
/// Per lag: counts = events - boundary_skips - undefined_skips, where a
/// boundary skip is an event outside the session or whose t + tau leaves it,
/// and an undefined skip is a sample without a defined midpoint.
struct ResponseCurve {
  std::vector<std::int64_t> lags;
  std::vector<std::optional<double>> values;
  std::vector<std::uint64_t> counts;
  std::uint64_t events{0};
  std::vector<std::uint64_t> boundary_skips;
  std::vector<std::uint64_t> undefined_skips;
};

/// ln(after / before). Throws UndefinedMidpoint unless both are present and
/// positive.
double log_return(std::optional<Midpoint> before, std::optional<Midpoint> after);
double log_return(Midpoint before, Midpoint after);

/// <eps(t) [ln m(t + tau) - ln m(t - delta)]>_t with tau in seconds. m(t - delta)
/// is each event's own pre-event midpoint; m(t + tau) is read from the
/// trajectory. `days[d]` pairs with `trajectories[d]`; events from all days are
/// pooled with equal weight. Events whose t + tau passes the session close
/// are left out. Throws EmptyGrid, and NoEvents when no event lies inside the
/// session.
ResponseCurve self_response_physical(std::span<const EventSeries> days,
                                     std::span<const MidpointTrajectory> trajectories,
                                     std::span<const std::int64_t> lag_seconds);

/// Lag counted in events of the same series: pairs the k-th in-session event
/// of a day with the (k + n)-th one of the same day. Throws EmptyGrid, NoEvents.
ResponseCurve self_response_event_scale(std::span<const EventSeries> days, const Session& session,
                                        std::span<const std::int64_t> lag_events);

/// The physical-time response over every event of a kind, quote-changing or
/// not (see classify::label_all).
ResponseCurve self_response_all_events(std::span<const EventSeries> days,
                                       std::span<const MidpointTrajectory> trajectories,
                                       std::span<const std::int64_t> lag_seconds);

/// kind,scale,tau,value,count
void write_curve_header(std::ostream& out, bool with_date = false);
void write_curve_rows(std::ostream& out, std::string_view kind, TimeScale scale, const ResponseCurve& curve,
                      std::optional<std::string_view> date = std::nullopt);

}  // namespace lobresp::response
