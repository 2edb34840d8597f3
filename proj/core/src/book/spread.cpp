#include "lobresp/book/spread.hpp"

#include <algorithm>

#include "lobresp/error.hpp"

namespace lobresp::book {

namespace {
__extension__ using Int128 = __int128;
}

double time_weighted_average_spread_ticks(std::span<const BookDelta> deltas, const Session& session) {
  Int128 weighted = 0;
  Int128 duration = 0;

  std::optional<Ticks> current;
  Timestamp since = session.open;
  auto close_interval = [&](Timestamp until) {
    const Timestamp from = std::max(since, session.open);
    const Timestamp to = std::min(until, session.close);
    if (current && to > from) {
      weighted += static_cast<Int128>(*current) * (to - from);
      duration += to - from;
    }
  };

  for (const auto& d : deltas) {
    close_interval(d.timestamp());
    current = d.quotes_after().spread();
    since = d.timestamp();
  }
  close_interval(session.close);

  if (duration == 0) throw Error(ErrorCode::NoDefinedSpread, "spread undefined for the whole session");
  // Split into whole and fractional parts so that the division stays exact as long as possible.
  const Int128 whole = weighted / duration;
  const Int128 rest = weighted % duration;
  return static_cast<double>(whole) + static_cast<double>(rest) / static_cast<double>(duration);
}

double time_weighted_average_spread(std::span<const BookDelta> deltas, const Session& session) {
  return time_weighted_average_spread_ticks(deltas, session) * kTickSize;
}

}  // namespace lobresp::book
