#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace lobresp {

/// Nanoseconds since midnight, exchange local time.
using Timestamp = std::int64_t;
using OrderId = std::uint64_t;
/// Integer price in ticks of 0.01 currency units.
using Ticks = std::int64_t;
using Shares = std::uint32_t;

inline constexpr Timestamp kNanosPerSecond = 1'000'000'000;
inline constexpr double kTickSize = 0.01;

enum class Side : std::uint8_t { Bid, Ask };

constexpr Side opposite(Side s) noexcept { return s == Side::Bid ? Side::Ask : Side::Bid; }
std::string_view to_string(Side s) noexcept;

enum class EventKind : std::uint8_t { Add, Execute, Cancel, Delete, Replace };

std::string_view to_string(EventKind k) noexcept;
std::optional<EventKind> event_kind_from_string(std::string_view s) noexcept;

/// Up to eight printable characters, stored space padded as on the wire.
class Symbol {
 public:
  static constexpr std::size_t kWidth = 8;

  Symbol() noexcept { chars_.fill(' '); }
  explicit Symbol(std::string_view text);

  /// Builds from a raw space-padded field; returns nullopt on an empty or
  /// non-printable field.
  static std::optional<Symbol> from_padded(std::string_view field) noexcept;

  std::string_view view() const noexcept;
  std::string str() const { return std::string(view()); }
  const std::array<char, kWidth>& padded() const noexcept { return chars_; }
  bool empty() const noexcept { return chars_[0] == ' '; }

  friend bool operator==(const Symbol&, const Symbol&) = default;
  friend auto operator<=>(const Symbol&, const Symbol&) = default;

 private:
  std::array<char, kWidth> chars_;
};

std::ostream& operator<<(std::ostream& os, const Symbol& s);

struct Replacement {
  OrderId new_order_id{0};
  Ticks new_price{0};
  Shares new_shares{0};

  friend bool operator==(const Replacement&, const Replacement&) = default;
};

/// One decoded order-flow message. `side` is carried by Add only; for other
/// kinds the book resolves it. `price` is 0 when the message carries none
/// (Execute without print price, Cancel, Delete, Replace) and `shares` is 0
/// for Delete and Replace.
struct OrderEvent {
  Timestamp timestamp{0};
  Symbol symbol;
  OrderId order_id{0};
  EventKind kind{EventKind::Add};
  std::optional<Side> side;
  Ticks price{0};
  Shares shares{0};
  std::optional<Replacement> replacement;

  friend bool operator==(const OrderEvent&, const OrderEvent&) = default;
};

std::ostream& operator<<(std::ostream& os, const OrderEvent& e);

/// Exact midpoint as a half-tick rational: stores bid + ask.
class Midpoint {
 public:
  constexpr Midpoint() noexcept = default;
  static constexpr Midpoint from_quotes(Ticks bid, Ticks ask) noexcept { return Midpoint(bid + ask); }
  static constexpr Midpoint from_ticks(Ticks price) noexcept { return Midpoint(2 * price); }
  static constexpr Midpoint from_doubled(std::int64_t doubled) noexcept { return Midpoint(doubled); }

  constexpr std::int64_t doubled() const noexcept { return doubled_; }
  constexpr double ticks() const noexcept { return static_cast<double>(doubled_) / 2.0; }
  constexpr double currency() const noexcept { return ticks() * kTickSize; }

  /// Sign of `price - midpoint`: +1, -1 or 0.
  constexpr int compare_price(Ticks price) const noexcept {
    const std::int64_t d = 2 * price - doubled_;
    return (d > 0) - (d < 0);
  }

  friend constexpr bool operator==(Midpoint, Midpoint) = default;
  friend constexpr auto operator<=>(Midpoint, Midpoint) = default;

 private:
  constexpr explicit Midpoint(std::int64_t doubled) noexcept : doubled_(doubled) {}
  std::int64_t doubled_{0};
};

/// Renders a midpoint in ticks: "10011" or "10011.5".
std::string format_midpoint(Midpoint m);
std::optional<Midpoint> parse_midpoint(std::string_view text) noexcept;
std::ostream& operator<<(std::ostream& os, Midpoint m);

/// Intraday analysis window [open, close], both inclusive.
struct Session {
  Timestamp open{0};
  Timestamp close{0};

  static Session regular();  // 09:40 - 15:50
  bool contains(Timestamp t) const noexcept { return t >= open && t <= close; }
  Timestamp length() const noexcept { return close - open; }

  friend bool operator==(const Session&, const Session&) = default;
};

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

/// Parses "HH:MM" or "HH:MM:SS[.fraction]" into nanoseconds since midnight.
std::optional<Timestamp> parse_clock(std::string_view text) noexcept;
std::string format_clock(Timestamp t);

}  // namespace lobresp

template <>
struct std::hash<lobresp::Symbol> {
  std::size_t operator()(const lobresp::Symbol& s) const noexcept {
    std::uint64_t v = 0;
    for (char c : s.padded()) v = (v << 8) | static_cast<unsigned char>(c);
    return std::hash<std::uint64_t>{}(v);
  }
};
