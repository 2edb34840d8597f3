#include "lobresp/classify/classifier.hpp"

#include <sstream>

#include "lobresp/error.hpp"

namespace lobresp::classify {

using book::BookDelta;

std::string_view to_string(SpreadChangeKind k) noexcept {
  switch (k) {
    case SpreadChangeKind::Trade: return "trade";
    case SpreadChangeKind::Deletion: return "deletion";
    case SpreadChangeKind::Placement: return "placement";
  }
  return "?";
}

std::optional<SpreadChangeKind> spread_change_kind_from_string(std::string_view s) noexcept {
  if (s == "trade") return SpreadChangeKind::Trade;
  if (s == "deletion") return SpreadChangeKind::Deletion;
  if (s == "placement") return SpreadChangeKind::Placement;
  return std::nullopt;
}

std::ostream& operator<<(std::ostream& os, const SpreadChangeEvent& e) {
  os << "{" << e.timestamp << " " << e.symbol << " " << to_string(e.kind) << " sign=" << e.sign
     << " m=" << e.midpoint_before << "->";
  if (e.midpoint_after) {
    os << *e.midpoint_after;
  } else {
    os << "none";
  }
  return os << " px=" << e.event_price << (e.quote_changed ? "" : " passive") << "}";
}

namespace {

[[noreturn]] void unclassifiable(const BookDelta& d, const std::string& why) {
  std::ostringstream os;
  os << "delta for " << d.event << ": " << why;
  throw Error(ErrorCode::UnclassifiableDelta, os.str());
}

SpreadChangeKind kind_of(EventKind k) {
  switch (k) {
    case EventKind::Execute: return SpreadChangeKind::Trade;
    case EventKind::Cancel:
    case EventKind::Delete: return SpreadChangeKind::Deletion;
    case EventKind::Add: return SpreadChangeKind::Placement;
    case EventKind::Replace: break;  // the book always splits Replace into legs
  }
  throw Error(ErrorCode::UnclassifiableDelta, "unsplit replace delta");
}

SpreadChangeEvent make_event(const BookDelta& d, SpreadChangeKind kind) {
  int sign = d.midpoint_before->compare_price(d.event_price);
  if (sign == 0) {
    // Only a placement inside an even spread can land on the midpoint; it
    // takes the sign of the side it joins.
    if (d.event.kind != EventKind::Add) unclassifiable(d, "event price equals the pre-event midpoint");
    sign = d.side == Side::Bid ? -1 : 1;
  }
  SpreadChangeEvent e;
  e.timestamp = d.timestamp();
  e.symbol = d.event.symbol;
  e.kind = kind;
  e.sign = sign;
  e.midpoint_before = *d.midpoint_before;
  e.midpoint_after = d.midpoint_after;
  e.event_price = d.event_price;
  e.quote_changed = d.spread_changed;
  return e;
}

}  // namespace

std::optional<SpreadChangeEvent> classify(const BookDelta& d) {
  if (!d.spread_changed || !d.midpoint_before) return std::nullopt;

  switch (d.event.kind) {
    case EventKind::Execute:
      if (!d.order_removed) unclassifiable(d, "partial execution changed a quote");
      return make_event(d, SpreadChangeKind::Trade);
    case EventKind::Cancel:
    case EventKind::Delete:
      if (!d.order_removed) unclassifiable(d, "partial cancel changed a quote");
      return make_event(d, SpreadChangeKind::Deletion);
    case EventKind::Add: {
      const bool inside = d.event_price > *d.bid_before && d.event_price < *d.ask_before;
      if (!inside) unclassifiable(d, "placement outside the previous spread changed a quote");
      return make_event(d, SpreadChangeKind::Placement);
    }
    case EventKind::Replace:
      break;
  }
  unclassifiable(d, "unsplit replace");
}

std::optional<SpreadChangeEvent> label_event(const BookDelta& d) {
  if (!d.midpoint_before) return std::nullopt;
  if (d.spread_changed) return classify(d);
  return make_event(d, kind_of(d.event.kind));
}

std::vector<SpreadChangeEvent> classify_all(std::span<const BookDelta> deltas) {
  std::vector<SpreadChangeEvent> out;
  for (const auto& d : deltas) {
    if (auto e = classify(d)) out.push_back(*e);
  }
  return out;
}

std::vector<SpreadChangeEvent> label_all(std::span<const BookDelta> deltas, SpreadChangeKind kind) {
  std::vector<SpreadChangeEvent> out;
  for (const auto& d : deltas) {
    if (kind_of(d.event.kind) != kind) continue;
    if (auto e = label_event(d)) out.push_back(*e);
  }
  return out;
}

std::vector<SpreadChangeEvent> aggregate_trades(std::span<const SpreadChangeEvent> events) {
  std::vector<SpreadChangeEvent> out;
  out.reserve(events.size());
  for (const auto& e : events) {
    if (!out.empty()) {
      SpreadChangeEvent& last = out.back();
      if (e.kind == SpreadChangeKind::Trade && last.kind == SpreadChangeKind::Trade &&
          e.timestamp == last.timestamp && e.sign == last.sign && e.symbol == last.symbol) {
        last.midpoint_after = e.midpoint_after;
        last.quote_changed = last.quote_changed || e.quote_changed;
        continue;
      }
    }
    out.push_back(e);
  }
  return out;
}

std::vector<SpreadChangeEvent> filter_kind(std::span<const SpreadChangeEvent> events, SpreadChangeKind kind) {
  std::vector<SpreadChangeEvent> out;
  for (const auto& e : events) {
    if (e.kind == kind) out.push_back(e);
  }
  return out;
}

RelativeAmounts relative_amounts(std::span<const SpreadChangeEvent> events) {
  if (events.empty()) throw Error(ErrorCode::EmptyEventList, "no spread-changing events");
  RelativeAmounts a;
  for (const auto& e : events) {
    switch (e.kind) {
      case SpreadChangeKind::Trade: ++a.trades; break;
      case SpreadChangeKind::Deletion: ++a.deletions; break;
      case SpreadChangeKind::Placement: ++a.placements; break;
    }
  }
  return a;
}

double balance_deviation(const RelativeAmounts& a) {
  // (2(T + D) - 1) / 2 over integer counts, rounded once.
  const auto total = static_cast<double>(a.total());
  const auto exits = static_cast<double>(a.trades + a.deletions);
  return (2.0 * exits - total) / (2.0 * total);
}

void write_amounts_header(std::ostream& out) { out << "symbol,date,O,D,T,total,deviation\n"; }

void write_amounts_row(std::ostream& out, const Symbol& symbol, std::string_view date, const RelativeAmounts& a) {
  out << symbol << ',' << date << ',' << format_double(a.placement_share()) << ','
      << format_double(a.deletion_share()) << ',' << format_double(a.trade_share()) << ',' << a.total() << ','
      << format_double(balance_deviation(a)) << '\n';
}

void write_events_header(std::ostream& out) {
  out << "symbol,date,timestamp_ns,kind,sign,midpoint_before,midpoint_after,event_price_ticks,quote_changed\n";
}

void write_events_rows(std::ostream& out, std::string_view date, std::span<const SpreadChangeEvent> events) {
  for (const auto& e : events) {
    out << e.symbol << ',' << date << ',' << e.timestamp << ',' << to_string(e.kind) << ',' << e.sign << ','
        << e.midpoint_before << ',';
    if (e.midpoint_after) out << *e.midpoint_after;
    out << ',' << e.event_price << ',' << (e.quote_changed ? 1 : 0) << '\n';
  }
}

}  // namespace lobresp::classify
