#include "lobresp/synth/generator.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>
#include <unordered_map>

#include "lobresp/error.hpp"

namespace lobresp::synth {

using classify::SpreadChangeKind;

namespace {

class Rng {
 public:
  explicit Rng(std::seed_seq& seq) : engine_(seq) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return uniform() < p; }
  double exponential(double rate) { return -std::log1p(-uniform()) / rate; }
  /// Failures before the first success.
  std::int64_t geometric(double p) {
    return static_cast<std::int64_t>(std::floor(std::log1p(-uniform()) / std::log1p(-p)));
  }
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(engine_() % span);
  }

 private:
  std::mt19937_64 engine_;
};

constexpr std::uint64_t kImpactStream = 0x1a3c7e;

/// Market-wide hidden direction; every symbol rebuilds the same path.
class ImpactPath {
 public:
  ImpactPath(const GeneratorConfig& c)
      : seq_{c.seed, kImpactStream}, rng_(seq_), rate_(1.0 / c.impact.timescale_seconds) {
    state_ = rng_.bernoulli(0.5) ? 1 : -1;
    next_flip_ = static_cast<double>(c.session.open) / kNanosPerSecond + rng_.exponential(rate_);
  }

  int at(Timestamp t) {
    const double seconds = static_cast<double>(t) / kNanosPerSecond;
    while (seconds >= next_flip_) {
      state_ = -state_;
      next_flip_ += rng_.exponential(rate_);
    }
    return state_;
  }

 private:
  std::seed_seq seq_;
  Rng rng_;
  double rate_;
  double next_flip_;
  int state_;
};

struct Live {
  Side side;
  Ticks price;
  Shares shares;
  std::size_t slot;  // index in the side's pool
};

class SymbolSimulator {
 public:
  SymbolSimulator(const GeneratorConfig& c, std::size_t index, const EventSink& sink, bool keep_labels)
      : c_(c),
        symbol_(c.symbols[index]),
        seq_{c.seed, static_cast<std::uint64_t>(index) + 1, std::uint64_t{0x5eed}},
        rng_(seq_),
        impact_(c),
        sink_(sink),
        keep_labels_(keep_labels),
        next_id_((static_cast<OrderId>(index) + 1) << 40) {}

  SymbolTruth run() {
    seed_book();
    const Rates& r = c_.rates;
    double clock = static_cast<double>(last_ts_ + 1) / kNanosPerSecond;
    while (true) {
      const double cancel_total = r.cancellation * static_cast<double>(live_.size());
      const double total = r.placement + cancel_total + r.market + r.replace + r.background;
      clock += rng_.exponential(total);
      const auto ts = std::max(last_ts_ + 1, static_cast<Timestamp>(std::llround(clock * kNanosPerSecond)));
      if (ts > c_.session.close) break;
      double pick = rng_.uniform() * total;
      if ((pick -= r.placement) < 0.0) {
        place(ts);
      } else if ((pick -= cancel_total) < 0.0) {
        cancel(ts);
      } else if ((pick -= r.market) < 0.0) {
        market_order(ts);
      } else if ((pick -= r.background) < 0.0) {
        place_deep(ts);
      } else {
        replace(ts);
      }
    }
    return std::move(truth_);
  }

 private:
  // --- internal book -------------------------------------------------------

  std::map<Ticks, std::deque<OrderId>>& levels(Side s) { return s == Side::Bid ? bids_ : asks_; }

  std::optional<Ticks> best(Side s) const {
    if (s == Side::Bid) return bids_.empty() ? std::nullopt : std::optional<Ticks>(bids_.rbegin()->first);
    return asks_.empty() ? std::nullopt : std::optional<Ticks>(asks_.begin()->first);
  }

  static std::size_t index(Side s) { return s == Side::Bid ? 0 : 1; }
  std::size_t side_orders(Side s) const { return pool_[index(s)].size(); }

  void insert(OrderId id, Side side, Ticks price, Shares shares) {
    levels(side)[price].push_back(id);
    auto& pool = pool_[index(side)];
    live_.emplace(id, Live{side, price, shares, pool.size()});
    pool.push_back(id);
    side_volume_[index(side)] += shares;
  }

  void remove(OrderId id) {
    const Live o = live_.at(id);
    auto& book = levels(o.side);
    auto level = book.find(o.price);
    auto& queue = level->second;
    queue.erase(std::find(queue.begin(), queue.end(), id));
    if (queue.empty()) book.erase(level);
    auto& pool = pool_[index(o.side)];
    const OrderId moved = pool.back();
    pool[o.slot] = moved;
    live_.at(moved).slot = o.slot;
    pool.pop_back();
    live_.erase(id);
    side_volume_[index(o.side)] -= o.shares;
  }

  Shares draw_shares(int min_lots, int max_lots) {
    return static_cast<Shares>(rng_.uniform_int(min_lots, max_lots)) * c_.lot;
  }

  // --- emission ------------------------------------------------------------

  struct QuoteState {
    std::optional<Ticks> bid, ask;
    bool operator==(const QuoteState&) const = default;
  };
  QuoteState quotes() const { return {best(Side::Bid), best(Side::Ask)}; }

  void label(const QuoteState& before, book::Leg leg, SpreadChangeKind kind, Side side, Ticks price, Timestamp ts) {
    if (!keep_labels_ || !before.bid || !before.ask || before == quotes()) return;
    const std::int64_t d = 2 * price - (*before.bid + *before.ask);
    int sign = (d > 0) - (d < 0);
    if (sign == 0) sign = side == Side::Bid ? -1 : 1;
    truth_.labels.push_back({event_index_, leg, kind, sign, ts});
  }

  void emit(const OrderEvent& e, std::uint64_t aggressor) {
    sink_(e);
    last_ts_ = e.timestamp;
    truth_.aggressor.push_back(aggressor);
    ++event_index_;
    if (c_.checkpoint_every != 0 && event_index_ % c_.checkpoint_every == 0) snapshot();
  }

  void snapshot() {
    BookSnapshot s;
    s.events_applied = event_index_;
    auto summarize = [this](auto first, auto last, std::vector<book::LevelSummary>& out) {
      for (; first != last; ++first) {
        book::LevelSummary level{first->first, 0, 0};
        for (OrderId id : first->second) {
          level.shares += live_.at(id).shares;
          ++level.orders;
        }
        out.push_back(level);
      }
    };
    summarize(bids_.rbegin(), bids_.rend(), s.bids);
    summarize(asks_.begin(), asks_.end(), s.asks);
    truth_.checkpoints.push_back(std::move(s));
  }

  OrderEvent base_event(Timestamp ts, OrderId id, EventKind kind) const {
    OrderEvent e;
    e.timestamp = ts;
    e.symbol = symbol_;
    e.order_id = id;
    e.kind = kind;
    return e;
  }

  void add(Timestamp ts, Side side, Ticks price, Shares shares) {
    const auto before = quotes();
    const OrderId id = next_id_++;
    insert(id, side, price, shares);
    OrderEvent e = base_event(ts, id, EventKind::Add);
    e.side = side;
    e.price = price;
    e.shares = shares;
    label(before, book::Leg::Single, SpreadChangeKind::Placement, side, price, ts);
    emit(e, 0);
  }

  // --- flow ----------------------------------------------------------------

  void seed_book() {
    Timestamp ts = c_.session.open;
    for (int level = 0; level < c_.initial_levels; ++level) {
      for (int k = 0; k < c_.initial_orders_per_level; ++k) {
        add(ts++, Side::Bid, c_.initial_price - 1 - level, draw_shares(c_.min_lots, c_.max_lots));
        add(ts++, Side::Ask, c_.initial_price + 1 + level, draw_shares(c_.min_lots, c_.max_lots));
      }
    }
  }

  /// Price at 1 + Geometric(p) ticks from the opposite best, or nullopt when
  /// it would not be a positive, encodable price.
  std::optional<Ticks> placement_price(Side side) {
    const Ticks opposite_best = *best(opposite(side));
    const Ticks distance = 1 + rng_.geometric(c_.depth_p);
    const Ticks price = side == Side::Bid ? opposite_best - distance : opposite_best + distance;
    if (price <= 0 || price > kMaxEncodablePrice) return std::nullopt;
    return price;
  }

  void place(Timestamp ts) {
    const Side side = rng_.bernoulli(0.5) ? Side::Bid : Side::Ask;
    const auto price = placement_price(side);
    if (!price) {
      ++truth_.rejected;
      return;
    }
    add(ts, side, *price, draw_shares(c_.min_lots, c_.max_lots));
  }

  /// Behind the same-side best by a uniform number of ticks, so the order
  /// almost never reaches the touch before it is cancelled.
  void place_deep(Timestamp ts) {
    const Side side = rng_.bernoulli(0.5) ? Side::Bid : Side::Ask;
    const Ticks distance = rng_.uniform_int(c_.background_min_ticks, c_.background_max_ticks);
    const Ticks price = side == Side::Bid ? *best(side) - distance : *best(side) + distance;
    if (price <= 0 || price > kMaxEncodablePrice) {
      ++truth_.rejected;
      return;
    }
    add(ts, side, price, draw_shares(c_.min_lots, c_.max_lots));
  }

  /// Uniformly chosen live order that is not the last one on its side.
  std::optional<OrderId> removable_order() {
    const std::size_t bids = pool_[0].size();
    auto k = static_cast<std::size_t>(rng_.uniform_int(0, static_cast<std::int64_t>(bids + pool_[1].size()) - 1));
    const auto& pool = k < bids ? pool_[0] : pool_[1];
    if (pool.size() < 2) {
      ++truth_.rejected;
      return std::nullopt;
    }
    return pool[k < bids ? k : k - bids];
  }

  void cancel(Timestamp ts) {
    const auto id = removable_order();
    if (!id) return;
    const Live o = live_.at(*id);
    const auto before = quotes();
    if (o.shares > 1 && rng_.bernoulli(c_.partial_cancel_prob)) {
      const auto cut = static_cast<Shares>(rng_.uniform_int(1, o.shares - 1));
      live_.at(*id).shares -= cut;
      side_volume_[index(o.side)] -= cut;
      OrderEvent e = base_event(ts, *id, EventKind::Cancel);
      e.shares = cut;
      emit(e, 0);
      return;
    }
    OrderEvent e = base_event(ts, *id, EventKind::Delete);
    if (rng_.bernoulli(c_.cancel_as_reduce_prob)) {
      e.kind = EventKind::Cancel;
      e.shares = o.shares;
    }
    remove(*id);
    label(before, book::Leg::Single, SpreadChangeKind::Deletion, o.side, o.price, ts);
    emit(e, 0);
  }

  void market_order(Timestamp ts) {
    const double buy_prob = 0.5 + c_.impact.strength * impact_.at(ts);
    const Side hit = rng_.bernoulli(buy_prob) ? Side::Ask : Side::Bid;
    const std::uint64_t available = side_volume_[index(hit)];
    if (available < 2) {
      ++truth_.rejected;
      return;
    }
    // The last share on a side always survives.
    std::uint64_t remaining =
        std::min<std::uint64_t>(draw_shares(c_.market_min_lots, c_.market_max_lots), available - 1);
    const std::uint64_t aggressor = ++truth_.market_orders;
    while (remaining > 0) {
      const Ticks price = *best(hit);
      const OrderId id = levels(hit).at(price).front();
      Live& o = live_.at(id);
      const auto fill = static_cast<Shares>(std::min<std::uint64_t>(remaining, o.shares));
      remaining -= fill;
      const auto before = quotes();
      OrderEvent e = base_event(ts, id, EventKind::Execute);
      e.shares = fill;
      if (rng_.bernoulli(c_.priced_execution_prob)) e.price = price;
      if (fill == o.shares) {
        remove(id);
      } else {
        o.shares -= fill;
        side_volume_[index(hit)] -= fill;
      }
      label(before, book::Leg::Single, SpreadChangeKind::Trade, hit, price, ts);
      emit(e, aggressor);
    }
  }

  void replace(Timestamp ts) {
    const auto id = removable_order();
    if (!id) return;
    const Live o = live_.at(*id);
    const auto before_delete = quotes();
    remove(*id);
    const auto before_add = quotes();
    const auto price = placement_price(o.side);
    if (!price) {
      insert(*id, o.side, o.price, o.shares);
      ++truth_.rejected;
      return;
    }
    const Shares shares = draw_shares(c_.min_lots, c_.max_lots);
    const OrderId new_id = next_id_++;
    insert(new_id, o.side, *price, shares);

    // The delete leg is judged against the book between the two legs.
    if (keep_labels_ && before_delete.bid && before_delete.ask && !(before_delete == before_add)) {
      const std::int64_t d = 2 * o.price - (*before_delete.bid + *before_delete.ask);
      truth_.labels.push_back({event_index_, book::Leg::ReplaceDelete, SpreadChangeKind::Deletion,
                               static_cast<int>((d > 0) - (d < 0)), ts});
    }
    label(before_add, book::Leg::ReplaceAdd, SpreadChangeKind::Placement, o.side, *price, ts);

    OrderEvent e = base_event(ts, *id, EventKind::Replace);
    e.replacement = Replacement{new_id, *price, shares};
    emit(e, 0);
  }

  static constexpr Ticks kMaxEncodablePrice = 42'949'672;  // 2^32 - 1 wire units

  const GeneratorConfig& c_;
  Symbol symbol_;
  std::seed_seq seq_;
  Rng rng_;
  ImpactPath impact_;
  const EventSink& sink_;
  bool keep_labels_;
  OrderId next_id_;
  Timestamp last_ts_{0};
  std::uint64_t event_index_{0};

  std::map<Ticks, std::deque<OrderId>> bids_, asks_;
  std::unordered_map<OrderId, Live> live_;
  std::vector<OrderId> pool_[2];
  std::uint64_t side_volume_[2]{0, 0};
  SymbolTruth truth_;
};

void check_feasible(const GeneratorConfig& c) {
  c.validate();
  if (c.rates.placement == 0.0 && (c.rates.cancellation > 0.0 || c.rates.market > 0.0 || c.rates.replace > 0.0)) {
    throw Error(ErrorCode::InfeasibleConfig,
                "placement rate 0 with positive removal rates drains the book to its last orders");
  }
  if (c.symbols.size() >= (std::size_t{1} << 23)) throw Error(ErrorCode::InfeasibleConfig, "too many symbols");
  auto sorted = c.symbols;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::InvalidConfig, "duplicate symbol in generator config");
  }
}

}  // namespace

SymbolTruth generate_symbol(const GeneratorConfig& config, std::size_t symbol_index, const EventSink& sink,
                            bool keep_labels) {
  check_feasible(config);
  if (symbol_index >= config.symbols.size()) throw Error(ErrorCode::InvalidConfig, "symbol index out of range");
  SymbolSimulator sim(config, symbol_index, sink, keep_labels);
  return sim.run();
}

GeneratedDay generate(const GeneratorConfig& config) {
  check_feasible(config);
  GeneratedDay day;
  for (std::size_t i = 0; i < config.symbols.size(); ++i) {
    auto& stream = day.streams[config.symbols[i]];
    const EventSink sink = [&stream](const OrderEvent& e) { stream.push_back(e); };
    SymbolSimulator sim(config, i, sink, true);
    day.truth[config.symbols[i]] = sim.run();
  }
  return day;
}

std::vector<OrderEvent> GeneratedDay::merged() const {
  std::vector<OrderEvent> out;
  for (const auto& [symbol, events] : streams) out.insert(out.end(), events.begin(), events.end());
  // Streams are visited alphabetically, so a stable sort breaks ties by symbol.
  std::stable_sort(out.begin(), out.end(),
                   [](const OrderEvent& a, const OrderEvent& b) { return a.timestamp < b.timestamp; });
  return out;
}

OrderEvent mirror(const OrderEvent& e, Ticks pivot) {
  OrderEvent m = e;
  if (m.side) m.side = opposite(*m.side);
  if (m.price != 0) m.price = 2 * pivot - m.price;
  if (m.replacement) m.replacement->new_price = 2 * pivot - m.replacement->new_price;
  return m;
}

std::vector<OrderEvent> mirror(std::span<const OrderEvent> events, Ticks pivot) {
  std::vector<OrderEvent> out;
  out.reserve(events.size());
  for (const auto& e : events) out.push_back(mirror(e, pivot));
  return out;
}

}  // namespace lobresp::synth
