#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "lobresp/book/order_book.hpp"
#include "lobresp/classify/classifier.hpp"
#include "lobresp/synth/config.hpp"
#include "lobresp/types.hpp"

namespace lobresp::synth {

/// The generator's own view of a quote change caused by one event (or one
/// leg of a replace), computed from its internal book.
struct TruthLabel {
  std::uint64_t event_index{0};  // position in the symbol's event stream
  book::Leg leg{book::Leg::Single};
  classify::SpreadChangeKind kind{classify::SpreadChangeKind::Placement};
  int sign{0};
  Timestamp timestamp{0};
  friend bool operator==(const TruthLabel&, const TruthLabel&) = default;
};

struct BookSnapshot {
  std::uint64_t events_applied{0};
  std::vector<book::LevelSummary> bids;  // best first
  std::vector<book::LevelSummary> asks;  // best first
};

struct SymbolTruth {
  std::vector<TruthLabel> labels;
  /// Per event: the market order it belongs to (1-based) or 0.
  std::vector<std::uint64_t> aggressor;
  std::vector<BookSnapshot> checkpoints;
  std::uint64_t market_orders{0};
  std::uint64_t rejected{0};
};

struct GeneratedDay {
  /// Per-symbol streams with strictly increasing timestamps between events;
  /// the executions of one market order share a timestamp.
  std::map<Symbol, std::vector<OrderEvent>> streams;
  std::map<Symbol, SymbolTruth> truth;

  /// All streams merged by timestamp (ties broken by symbol).
  std::vector<OrderEvent> merged() const;
};

/// Receives each generated event as it is produced.
using EventSink = std::function<void(const OrderEvent&)>;

/// Generates one day. Same config and seed give identical output.
GeneratedDay generate(const GeneratorConfig& config);

/// Streams a single symbol without keeping the events; returns the truth
/// (labels only when `keep_labels`). Equivalent to generate() restricted to
/// that symbol.
SymbolTruth generate_symbol(const GeneratorConfig& config, std::size_t symbol_index, const EventSink& sink,
                            bool keep_labels = true);

/// Mirror image through `pivot`: sides swap and prices map to 2*pivot - p.
OrderEvent mirror(const OrderEvent& e, Ticks pivot);
std::vector<OrderEvent> mirror(std::span<const OrderEvent> events, Ticks pivot);

}  // namespace lobresp::synth
