#pragma once

#include <span>

#include "lobresp/book/order_book.hpp"

namespace lobresp::book {

/// Time-weighted average spread in ticks over `session`.
///
/// The spread after each delta holds until the next delta's timestamp (the
/// last one holds until the session closes). Intervals with an undefined
/// spread are left out of both sums. Sums are exact integers; the only
/// rounding is the final division. Throws NoDefinedSpread.
double time_weighted_average_spread_ticks(std::span<const BookDelta> deltas, const Session& session);

/// Same as above, in currency units (ticks * 0.01).
double time_weighted_average_spread(std::span<const BookDelta> deltas, const Session& session);

}  // namespace lobresp::book
