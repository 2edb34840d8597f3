#include "lobresp/book/order_book.hpp"

#include <sstream>
#include <stdexcept>
#include <string>

#include "lobresp/error.hpp"

namespace lobresp::book {

namespace {

std::string describe(const OrderEvent& e) {
  std::ostringstream os;
  os << e;
  return os.str();
}

template <class Levels>
void add_to_level(Levels& levels, Ticks price, Shares shares) {
  auto& level = levels[price];
  level.shares += shares;
  ++level.orders;
}

template <class Levels>
void take_from_level(Levels& levels, Ticks price, Shares shares, bool removes_order) {
  auto it = levels.find(price);
  it->second.shares -= shares;
  if (removes_order && --it->second.orders == 0) levels.erase(it);
}

template <class Levels>
std::vector<LevelSummary> summarize(const Levels& levels) {
  std::vector<LevelSummary> out;
  out.reserve(levels.size());
  for (const auto& [price, level] : levels) out.push_back({price, level.shares, level.orders});
  return out;
}

}  // namespace

std::optional<Midpoint> Quotes::midpoint() const noexcept {
  if (!bid || !ask) return std::nullopt;
  return Midpoint::from_quotes(*bid, *ask);
}

std::optional<Ticks> Quotes::spread() const noexcept {
  if (!bid || !ask) return std::nullopt;
  return *ask - *bid;
}

std::optional<Ticks> OrderBook::best_bid() const noexcept {
  if (bids_.empty()) return std::nullopt;
  return bids_.begin()->first;
}

std::optional<Ticks> OrderBook::best_ask() const noexcept {
  if (asks_.empty()) return std::nullopt;
  return asks_.begin()->first;
}

std::vector<LevelSummary> OrderBook::levels(Side side) const {
  return side == Side::Bid ? summarize(bids_) : summarize(asks_);
}

const RestingOrder* OrderBook::find(OrderId id) const noexcept {
  auto it = orders_.find(id);
  return it == orders_.end() ? nullptr : &it->second;
}

void OrderBook::check_time(const OrderEvent& event) const {
  if (event.timestamp < last_timestamp_) {
    throw Error(ErrorCode::OutOfOrderTimestamp, "event " + describe(event) + " precedes book time " +
                                                     std::to_string(last_timestamp_));
  }
}

void OrderBook::check_not_crossing(Side side, Ticks price, const OrderEvent& event) const {
  const bool crosses = side == Side::Bid ? (!asks_.empty() && price >= asks_.begin()->first)
                                         : (!bids_.empty() && price <= bids_.begin()->first);
  if (crosses) throw Error(ErrorCode::CrossedBookProduced, "event " + describe(event) + " would cross the book");
}

void OrderBook::insert(OrderId id, const RestingOrder& order) {
  orders_.emplace(id, order);
  if (order.side == Side::Bid) {
    add_to_level(bids_, order.price, order.shares);
  } else {
    add_to_level(asks_, order.price, order.shares);
  }
}

void OrderBook::reduce(std::unordered_map<OrderId, RestingOrder>::iterator it, Shares shares) {
  RestingOrder& order = it->second;
  const bool removes = shares == order.shares;
  if (order.side == Side::Bid) {
    take_from_level(bids_, order.price, shares, removes);
  } else {
    take_from_level(asks_, order.price, shares, removes);
  }
  if (removes) {
    orders_.erase(it);
  } else {
    order.shares -= shares;
  }
}

void OrderBook::fill_before(BookDelta& delta) const {
  delta.bid_before = best_bid();
  delta.ask_before = best_ask();
  delta.midpoint_before = Quotes{delta.bid_before, delta.ask_before}.midpoint();
}

void OrderBook::fill_after(BookDelta& delta) const {
  delta.bid_after = best_bid();
  delta.ask_after = best_ask();
  delta.midpoint_after = Quotes{delta.bid_after, delta.ask_after}.midpoint();
  delta.spread_changed = delta.bid_before != delta.bid_after || delta.ask_before != delta.ask_after;
}

BookUpdate OrderBook::apply(const OrderEvent& event) {
  check_time(event);
  BookUpdate update;

  switch (event.kind) {
    case EventKind::Add: {
      if (!event.side) throw Error(ErrorCode::MalformedMessage, "add without side: " + describe(event));
      if (orders_.contains(event.order_id)) {
        throw Error(ErrorCode::DuplicateOrderId, "order id already live: " + describe(event));
      }
      check_not_crossing(*event.side, event.price, event);
      BookDelta& d = update.push();
      d.event = event;
      d.side = *event.side;
      d.event_price = event.price;
      fill_before(d);
      insert(event.order_id, RestingOrder{*event.side, event.price, event.shares});
      fill_after(d);
      break;
    }
    case EventKind::Execute:
    case EventKind::Cancel:
    case EventKind::Delete: {
      auto it = orders_.find(event.order_id);
      if (it == orders_.end()) throw Error(ErrorCode::UnknownOrderId, "no live order for " + describe(event));
      const Shares shares = event.kind == EventKind::Delete ? it->second.shares : event.shares;
      if (shares > it->second.shares) {
        throw Error(ErrorCode::Overfill, describe(event) + " exceeds resting " + std::to_string(it->second.shares) +
                                             " shares");
      }
      BookDelta& d = update.push();
      d.event = event;
      d.side = it->second.side;
      d.event_price = it->second.price;
      d.order_removed = shares == it->second.shares;
      fill_before(d);
      reduce(it, shares);
      fill_after(d);
      break;
    }
    case EventKind::Replace: {
      if (!event.replacement) throw Error(ErrorCode::MalformedMessage, "replace without new order: " + describe(event));
      const Replacement& r = *event.replacement;
      auto it = orders_.find(event.order_id);
      if (it == orders_.end()) throw Error(ErrorCode::UnknownOrderId, "no live order for " + describe(event));
      if (r.new_order_id != event.order_id && orders_.contains(r.new_order_id)) {
        throw Error(ErrorCode::DuplicateOrderId, "replacement id already live: " + describe(event));
      }
      const RestingOrder old = it->second;
      // The opposite side is untouched by the delete leg, so the cross check holds for both legs.
      check_not_crossing(old.side, r.new_price, event);

      BookDelta& del = update.push();
      del.event = OrderEvent{event.timestamp, event.symbol, event.order_id, EventKind::Delete, std::nullopt, 0, 0,
                             std::nullopt};
      del.leg = Leg::ReplaceDelete;
      del.side = old.side;
      del.event_price = old.price;
      del.order_removed = true;
      fill_before(del);
      reduce(it, old.shares);
      fill_after(del);

      BookDelta& add = update.push();
      add.event = OrderEvent{event.timestamp, event.symbol, r.new_order_id, EventKind::Add, old.side, r.new_price,
                             r.new_shares, std::nullopt};
      add.leg = Leg::ReplaceAdd;
      add.side = old.side;
      add.event_price = r.new_price;
      fill_before(add);
      insert(r.new_order_id, RestingOrder{old.side, r.new_price, r.new_shares});
      fill_after(add);
      break;
    }
  }
  last_timestamp_ = event.timestamp;
  return update;
}

void OrderBook::check_invariants() const {
  BidLevels bids;
  AskLevels asks;
  for (const auto& [id, order] : orders_) {
    if (order.shares == 0) throw std::logic_error("order " + std::to_string(id) + " has zero shares");
    if (order.side == Side::Bid) {
      add_to_level(bids, order.price, order.shares);
    } else {
      add_to_level(asks, order.price, order.shares);
    }
  }
  if (summarize(bids) != summarize(bids_) || summarize(asks) != summarize(asks_)) {
    throw std::logic_error("price levels disagree with resting orders");
  }
  if (!bids_.empty() && !asks_.empty() && bids_.begin()->first >= asks_.begin()->first) {
    throw std::logic_error("book is crossed");
  }
}

BookUpdate apply_event(OrderBook& book, const OrderEvent& event) { return book.apply(event); }

std::vector<BookDelta> replay(std::span<const OrderEvent> events, OrderBook& book) {
  std::vector<BookDelta> deltas;
  deltas.reserve(events.size());
  for (const auto& e : events) {
    for (const auto& d : book.apply(e)) deltas.push_back(d);
  }
  return deltas;
}

}  // namespace lobresp::book
