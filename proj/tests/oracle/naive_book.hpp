#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "lobresp/book/order_book.hpp"
#include "lobresp/types.hpp"

namespace lobresp::oracle {

/// Deliberately simple book: a flat list of live orders. Every query scans the
/// whole list and aggregates levels from scratch.
class NaiveBook {
 public:
  struct Order {
    OrderId id;
    Side side;
    Ticks price;
    Shares shares;
  };

  void apply(const OrderEvent& e) {
    switch (e.kind) {
      case EventKind::Add:
        orders_.push_back({e.order_id, *e.side, e.price, e.shares});
        break;
      case EventKind::Execute:
      case EventKind::Cancel: {
        auto& o = at(e.order_id);
        if (e.shares > o.shares) throw std::runtime_error("naive book: overfill");
        o.shares -= e.shares;
        if (o.shares == 0) erase(e.order_id);
        break;
      }
      case EventKind::Delete:
        erase(e.order_id);
        break;
      case EventKind::Replace: {
        const Side side = at(e.order_id).side;
        erase(e.order_id);
        orders_.push_back({e.replacement->new_order_id, side, e.replacement->new_price, e.replacement->new_shares});
        break;
      }
    }
  }

  std::vector<book::LevelSummary> levels(Side side) const {
    std::map<Ticks, book::LevelSummary> by_price;
    for (const auto& o : orders_) {
      if (o.side != side) continue;
      auto& level = by_price[o.price];
      level.price = o.price;
      level.shares += o.shares;
      level.orders += 1;
    }
    std::vector<book::LevelSummary> out;
    for (const auto& [p, l] : by_price) out.push_back(l);
    if (side == Side::Bid) std::reverse(out.begin(), out.end());
    return out;
  }

  std::optional<Ticks> best(Side side) const {
    std::optional<Ticks> b;
    for (const auto& o : orders_) {
      if (o.side != side) continue;
      if (!b || (side == Side::Bid ? o.price > *b : o.price < *b)) b = o.price;
    }
    return b;
  }

  std::optional<Midpoint> midpoint() const {
    auto bid = best(Side::Bid), ask = best(Side::Ask);
    if (!bid || !ask) return std::nullopt;
    return Midpoint::from_quotes(*bid, *ask);
  }

  const std::vector<Order>& orders() const { return orders_; }

 private:
  Order& at(OrderId id) {
    for (auto& o : orders_) {
      if (o.id == id) return o;
    }
    throw std::runtime_error("naive book: unknown order");
  }
  void erase(OrderId id) {
    auto it = std::find_if(orders_.begin(), orders_.end(), [&](const Order& o) { return o.id == id; });
    if (it == orders_.end()) throw std::runtime_error("naive book: unknown order");
    orders_.erase(it);
  }

  std::vector<Order> orders_;
};

/// Rebuilds the book from nothing using the first `count` events.
inline NaiveBook rebuild(const std::vector<OrderEvent>& events, std::size_t count) {
  NaiveBook b;
  for (std::size_t k = 0; k < count; ++k) b.apply(events[k]);
  return b;
}

/// True when the two books hold the same orders and the same levels.
inline bool same_state(const book::OrderBook& fast, const NaiveBook& slow) {
  if (fast.order_count() != slow.orders().size()) return false;
  for (const auto& o : slow.orders()) {
    const auto* r = fast.find(o.id);
    if (!r || r->side != o.side || r->price != o.price || r->shares != o.shares) return false;
  }
  return fast.levels(Side::Bid) == slow.levels(Side::Bid) && fast.levels(Side::Ask) == slow.levels(Side::Ask) &&
         fast.best_bid() == slow.best(Side::Bid) && fast.best_ask() == slow.best(Side::Ask);
}

}  // namespace lobresp::oracle
