#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "lobresp/types.hpp"

namespace lobresp::book {

struct RestingOrder {
  Side side{Side::Bid};
  Ticks price{0};
  Shares shares{0};
  friend bool operator==(const RestingOrder&, const RestingOrder&) = default;
};

/// Aggregate of one price level.
struct LevelSummary {
  Ticks price{0};
  std::uint64_t shares{0};
  std::uint32_t orders{0};
  friend bool operator==(const LevelSummary&, const LevelSummary&) = default;
};

struct Quotes {
  std::optional<Ticks> bid;
  std::optional<Ticks> ask;

  /// (bid + ask) / 2 exactly; absent unless both sides are present.
  std::optional<Midpoint> midpoint() const noexcept;
  /// ask - bid in ticks; absent unless both sides are present.
  std::optional<Ticks> spread() const noexcept;

  friend bool operator==(const Quotes&, const Quotes&) = default;
};

/// Which part of an event a delta describes. Replace is split into a delete
/// leg followed by an add leg with the same timestamp.
enum class Leg : std::uint8_t { Single, ReplaceDelete, ReplaceAdd };

struct BookDelta {
  /// The applied event. Replace legs carry a synthesized Delete (old id) and
  /// Add (new id, side, price, shares) so that they read like plain events.
  OrderEvent event;
  Leg leg{Leg::Single};
  /// Side of the affected resting order.
  Side side{Side::Bid};
  /// Price of the limit order placed into or leaving the book.
  Ticks event_price{0};
  /// True when the event removed the order entirely.
  bool order_removed{false};
  std::optional<Ticks> bid_before, ask_before, bid_after, ask_after;
  std::optional<Midpoint> midpoint_before, midpoint_after;
  bool spread_changed{false};

  Timestamp timestamp() const noexcept { return event.timestamp; }
  Quotes quotes_before() const noexcept { return {bid_before, ask_before}; }
  Quotes quotes_after() const noexcept { return {bid_after, ask_after}; }
};

/// Deltas produced by one event (two for Replace).
class BookUpdate {
 public:
  std::size_t size() const noexcept { return count_; }
  const BookDelta& operator[](std::size_t i) const noexcept { return deltas_[i]; }
  const BookDelta* begin() const noexcept { return deltas_.data(); }
  const BookDelta* end() const noexcept { return deltas_.data() + count_; }

  BookDelta& push() noexcept { return deltas_[count_++]; }

 private:
  std::array<BookDelta, 2> deltas_{};
  std::size_t count_{0};
};

/// Per-symbol limit order book rebuilt from order-flow events.
///
/// Events are validated before any state changes, so a rejected event leaves
/// the book untouched. Crossing adds are rejected: executions arrive as
/// explicit messages, so a crossing add means the input is corrupt.
class OrderBook {
 public:
  explicit OrderBook(Symbol symbol = {}) : symbol_(symbol) {}

  /// Throws UnknownOrderId, DuplicateOrderId, Overfill, CrossedBookProduced
  /// or OutOfOrderTimestamp.
  BookUpdate apply(const OrderEvent& event);

  std::optional<Ticks> best_bid() const noexcept;
  std::optional<Ticks> best_ask() const noexcept;
  Quotes quotes() const noexcept { return {best_bid(), best_ask()}; }
  std::optional<Midpoint> midpoint() const noexcept { return quotes().midpoint(); }
  std::optional<Ticks> spread() const noexcept { return quotes().spread(); }

  /// Levels of one side, best price first.
  std::vector<LevelSummary> levels(Side side) const;
  const RestingOrder* find(OrderId id) const noexcept;
  std::size_t order_count() const noexcept { return orders_.size(); }
  const std::unordered_map<OrderId, RestingOrder>& orders() const noexcept { return orders_; }

  const Symbol& symbol() const noexcept { return symbol_; }
  Timestamp last_timestamp() const noexcept { return last_timestamp_; }

  /// Throws std::logic_error when level aggregates disagree with the orders
  /// or the book is crossed.
  void check_invariants() const;

 private:
  struct Level {
    std::uint64_t shares{0};
    std::uint32_t orders{0};
  };
  using BidLevels = std::map<Ticks, Level, std::greater<>>;
  using AskLevels = std::map<Ticks, Level>;

  void check_time(const OrderEvent& event) const;
  void check_not_crossing(Side side, Ticks price, const OrderEvent& event) const;
  void insert(OrderId id, const RestingOrder& order);
  void reduce(std::unordered_map<OrderId, RestingOrder>::iterator it, Shares shares);
  void fill_before(BookDelta& delta) const;
  void fill_after(BookDelta& delta) const;

  Symbol symbol_;
  std::unordered_map<OrderId, RestingOrder> orders_;
  BidLevels bids_;
  AskLevels asks_;
  Timestamp last_timestamp_{0};
};

BookUpdate apply_event(OrderBook& book, const OrderEvent& event);
inline Quotes best_quotes(const OrderBook& book) { return book.quotes(); }
inline std::optional<Midpoint> midpoint(const OrderBook& book) { return book.midpoint(); }
inline std::optional<Ticks> spread(const OrderBook& book) { return book.spread(); }

/// Replays a whole event sequence and returns every delta in order.
std::vector<BookDelta> replay(std::span<const OrderEvent> events, OrderBook& book);

}  // namespace lobresp::book
