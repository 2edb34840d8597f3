#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

#include "lobresp/book/order_book.hpp"
#include "lobresp/types.hpp"

namespace lobresp::classify {

enum class SpreadChangeKind : std::uint8_t { Trade, Deletion, Placement };

std::string_view to_string(SpreadChangeKind k) noexcept;
std::optional<SpreadChangeKind> spread_change_kind_from_string(std::string_view s) noexcept;

/// An order-flow event seen from the price-response side: what kind of event
/// it is, which side of the pre-event midpoint its limit price lies on, and
/// the midpoint around it.
struct SpreadChangeEvent {
  Timestamp timestamp{0};
  Symbol symbol;
  SpreadChangeKind kind{SpreadChangeKind::Trade};
  /// +1 when the limit price is above the pre-event midpoint (ask side), -1 below.
  int sign{0};
  Midpoint midpoint_before;
  std::optional<Midpoint> midpoint_after;
  Ticks event_price{0};
  /// False only for events produced by label_event that left both quotes alone.
  bool quote_changed{true};

  friend bool operator==(const SpreadChangeEvent&, const SpreadChangeEvent&) = default;
};

std::ostream& operator<<(std::ostream& os, const SpreadChangeEvent& e);

/// Classifies a quote-changing delta as a trade, deletion or placement.
/// Returns nullopt when no quote changed or the pre-event midpoint is
/// undefined. Throws UnclassifiableDelta when a quote changed in a way none of
/// the three patterns explains (a book-engine bug).
std::optional<SpreadChangeEvent> classify(const book::BookDelta& delta);

/// Labels any delta with a defined pre-event midpoint, quote-changing or not:
/// Execute -> Trade, Cancel/Delete -> Deletion, Add -> Placement. Used for the
/// all-events responses.
std::optional<SpreadChangeEvent> label_event(const book::BookDelta& delta);

std::vector<SpreadChangeEvent> classify_all(std::span<const book::BookDelta> deltas);
std::vector<SpreadChangeEvent> label_all(std::span<const book::BookDelta> deltas, SpreadChangeKind kind);

/// Merges runs of consecutive trades that share timestamp and sign into one
/// trade (one aggressing order hitting several resting orders). The merged
/// trade keeps the first leg's pre-event midpoint and the last leg's
/// post-event midpoint. Other kinds pass through.
std::vector<SpreadChangeEvent> aggregate_trades(std::span<const SpreadChangeEvent> events);

std::vector<SpreadChangeEvent> filter_kind(std::span<const SpreadChangeEvent> events, SpreadChangeKind kind);

/// Counts of spread changes by kind. The fractions are exact count ratios,
/// so placements + deletions + trades == total always holds.
struct RelativeAmounts {
  std::uint64_t placements{0};
  std::uint64_t deletions{0};
  std::uint64_t trades{0};

  std::uint64_t total() const noexcept { return placements + deletions + trades; }
  double placement_share() const noexcept { return ratio(placements); }
  double deletion_share() const noexcept { return ratio(deletions); }
  double trade_share() const noexcept { return ratio(trades); }

  friend bool operator==(const RelativeAmounts&, const RelativeAmounts&) = default;

 private:
  double ratio(std::uint64_t n) const noexcept {
    return static_cast<double>(n) / static_cast<double>(total());
  }
};

/// Throws EmptyEventList.
RelativeAmounts relative_amounts(std::span<const SpreadChangeEvent> events);

/// (T + D) - 0.5: zero on the line of balance, negative when placements
/// into the spread outnumber exits.
double balance_deviation(const RelativeAmounts& amounts);

/// symbol,date,O,D,T,total,deviation
void write_amounts_header(std::ostream& out);
void write_amounts_row(std::ostream& out, const Symbol& symbol, std::string_view date, const RelativeAmounts& a);

/// symbol,date,timestamp_ns,kind,sign,midpoint_before,midpoint_after,event_price_ticks,quote_changed
void write_events_header(std::ostream& out);
void write_events_rows(std::ostream& out, std::string_view date, std::span<const SpreadChangeEvent> events);

}  // namespace lobresp::classify
