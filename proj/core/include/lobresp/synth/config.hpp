#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <vector>

#include "lobresp/types.hpp"

namespace lobresp::synth {

/// Intensities of the zero-intelligence order flow, per second.
struct Rates {
  double placement{4.0};
  /// Per resting order: the total cancellation intensity is this times the
  /// number of live orders, which keeps the book size stationary.
  double cancellation{0.25};
  double market{0.2};
  double replace{0.1};
  /// Placements deep behind the same-side best (0 disables).
  double background{0.0};
};

/// Planted cross-symbol lead-lag: a hidden market-wide direction s(t) = +-1
/// that flips at rate 1/timescale; every symbol's market orders buy with
/// probability 0.5 + strength * s(t).
struct Impact {
  double strength{0.0};
  double timescale_seconds{600.0};
};

struct GeneratorConfig {
  std::uint64_t seed{1};
  std::vector<Symbol> symbols;
  /// Span of generated activity.
  Session session{34'200 * kNanosPerSecond, 57'600 * kNanosPerSecond};
  Rates rates;
  /// Placement distance from the opposite best is 1 + Geometric(depth_p) ticks.
  double depth_p{0.3};
  Ticks initial_price{10'000};
  int background_min_ticks{5};
  int background_max_ticks{50};
  int initial_levels{5};
  int initial_orders_per_level{2};
  Shares lot{100};
  int min_lots{1};
  int max_lots{5};
  int market_min_lots{1};
  int market_max_lots{6};
  /// Share of cancellations that only reduce the order.
  double partial_cancel_prob{0.1};
  /// Share of full cancellations sent as a cancel for all shares instead of a delete.
  double cancel_as_reduce_prob{0.1};
  /// Share of executions sent with a print price ('C').
  double priced_execution_prob{0.2};
  Impact impact;
  /// Record the true book every this many events (0 = never).
  std::uint64_t checkpoint_every{0};

  /// Throws InvalidConfig for out-of-range values.
  void validate() const;
};

/// Reads "key = value" lines ('#' starts a comment). Keys mirror the field
/// names: seed, symbols (comma separated), session_open, session_close
/// (HH:MM[:SS]), placement_rate, cancellation_rate, market_rate,
/// replace_rate, background_rate, background_min_ticks, background_max_ticks, depth_p, initial_price, initial_levels,
/// initial_orders_per_level, lot, min_lots, max_lots, market_min_lots,
/// market_max_lots, partial_cancel_prob, cancel_as_reduce_prob,
/// priced_execution_prob, impact_strength, impact_timescale, checkpoint_every.
/// Unknown keys are errors.
GeneratorConfig load_config(std::istream& in, GeneratorConfig base = {});
void save_config(std::ostream& out, const GeneratorConfig& config);

/// Rates that put the long-run spread-change mix near 50% placements,
/// 35% deletions and 15% trades (see docs/CALIBRATION.md).
GeneratorConfig calibrated_config(std::uint64_t seed, std::vector<Symbol> symbols);

}  // namespace lobresp::synth
