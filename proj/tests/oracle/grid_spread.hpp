#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "naive_book.hpp"

namespace lobresp::oracle {

/// Samples the spread once per second on [open, close) and averages the
/// defined samples. Exact for streams whose timestamps are whole seconds.
inline double grid_spread_ticks(const std::vector<OrderEvent>& events, const Session& session) {
  NaiveBook b;
  std::size_t next = 0;
  double sum = 0.0;
  long n = 0;
  for (Timestamp t = session.open; t < session.close; t += kNanosPerSecond) {
    while (next < events.size() && events[next].timestamp <= t) b.apply(events[next++]);
    auto bid = b.best(Side::Bid), ask = b.best(Side::Ask);
    if (!bid || !ask) continue;
    sum += static_cast<double>(*ask - *bid);
    ++n;
  }
  if (n == 0) throw std::runtime_error("grid oracle: spread never defined");
  return sum / static_cast<double>(n);
}

}  // namespace lobresp::oracle
