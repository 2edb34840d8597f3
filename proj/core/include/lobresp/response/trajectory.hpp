#pragma once

#include <optional>
#include <span>
#include <vector>

#include "lobresp/book/order_book.hpp"
#include "lobresp/types.hpp"

namespace lobresp::response {

/// Piecewise-constant, right-continuous midpoint path of one symbol over one
/// day. A breakpoint may carry no midpoint (one side of the book empty).
class MidpointTrajectory {
 public:
  struct Breakpoint {
    Timestamp time{0};
    std::optional<Midpoint> midpoint;
    friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
  };

  MidpointTrajectory() = default;
  /// Throws InvalidConfig unless breakpoint times are strictly increasing.
  MidpointTrajectory(Symbol symbol, Session session, std::vector<Breakpoint> breakpoints);

  /// The midpoint after every delta; several deltas at one timestamp collapse
  /// into the state after the last of them.
  static MidpointTrajectory from_deltas(Symbol symbol, std::span<const book::BookDelta> deltas, Session session);

  /// Midpoint in force at t: the last breakpoint at or before t.
  std::optional<Midpoint> at(Timestamp t) const noexcept;
  /// Midpoint in force just before t: the last breakpoint strictly before t.
  std::optional<Midpoint> before(Timestamp t) const noexcept;

  const std::vector<Breakpoint>& breakpoints() const noexcept { return breakpoints_; }
  const Symbol& symbol() const noexcept { return symbol_; }
  const Session& session() const noexcept { return session_; }

 private:
  Symbol symbol_;
  Session session_;
  std::vector<Breakpoint> breakpoints_;
};

}  // namespace lobresp::response
