#include "lobresp/types.hpp"

#include <charconv>
#include <cstdio>

#include "lobresp/error.hpp"

namespace lobresp {

std::string_view to_string(Side s) noexcept { return s == Side::Bid ? "bid" : "ask"; }

std::string_view to_string(EventKind k) noexcept {
  switch (k) {
    case EventKind::Add: return "add";
    case EventKind::Execute: return "execute";
    case EventKind::Cancel: return "cancel";
    case EventKind::Delete: return "delete";
    case EventKind::Replace: return "replace";
  }
  return "?";
}

std::optional<EventKind> event_kind_from_string(std::string_view s) noexcept {
  if (s == "add") return EventKind::Add;
  if (s == "execute") return EventKind::Execute;
  if (s == "cancel") return EventKind::Cancel;
  if (s == "delete") return EventKind::Delete;
  if (s == "replace") return EventKind::Replace;
  return std::nullopt;
}

namespace {

bool symbol_char(char c) noexcept { return c > ' ' && c < 127 && c != ','; }

}  // namespace

Symbol::Symbol(std::string_view text) {
  if (text.empty() || text.size() > kWidth) {
    throw Error(ErrorCode::ParseError, "symbol must have 1-8 characters: '" + std::string(text) + "'");
  }
  chars_.fill(' ');
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (!symbol_char(text[i])) {
      throw Error(ErrorCode::ParseError, "invalid character in symbol '" + std::string(text) + "'");
    }
    chars_[i] = text[i];
  }
}

std::optional<Symbol> Symbol::from_padded(std::string_view field) noexcept {
  if (field.size() != kWidth || !symbol_char(field[0])) return std::nullopt;
  Symbol s;
  bool padding = false;
  for (std::size_t i = 0; i < kWidth; ++i) {
    const char c = field[i];
    if (c == ' ') {
      padding = true;
    } else if (padding || !symbol_char(c)) {
      return std::nullopt;
    }
    s.chars_[i] = c;
  }
  return s;
}

std::string_view Symbol::view() const noexcept {
  std::size_t n = kWidth;
  while (n > 0 && chars_[n - 1] == ' ') --n;
  return {chars_.data(), n};
}

std::ostream& operator<<(std::ostream& os, const Symbol& s) { return os << s.view(); }

std::ostream& operator<<(std::ostream& os, const OrderEvent& e) {
  os << "{" << e.timestamp << " " << e.symbol << " " << to_string(e.kind) << " id=" << e.order_id;
  if (e.side) os << " " << to_string(*e.side);
  if (e.price != 0) os << " px=" << e.price;
  if (e.shares != 0) os << " qty=" << e.shares;
  if (e.replacement) {
    os << " -> id=" << e.replacement->new_order_id << " px=" << e.replacement->new_price
       << " qty=" << e.replacement->new_shares;
  }
  return os << "}";
}

std::string format_midpoint(Midpoint m) {
  const std::int64_t d = m.doubled();
  std::string out = std::to_string(d / 2);
  if (d % 2 != 0) {
    if (d < 0 && d / 2 == 0) out = "-0";
    out += ".5";
  }
  return out;
}

std::optional<Midpoint> parse_midpoint(std::string_view text) noexcept {
  bool half = false;
  if (text.ends_with(".5")) {
    half = true;
    text.remove_suffix(2);
  } else if (text.ends_with(".0")) {
    text.remove_suffix(2);
  }
  const bool negative = !text.empty() && text.front() == '-';
  std::int64_t whole = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), whole);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) return std::nullopt;
  std::int64_t doubled = 2 * whole;
  if (half) doubled += negative ? -1 : 1;
  return Midpoint::from_doubled(doubled);
}

std::ostream& operator<<(std::ostream& os, Midpoint m) { return os << format_midpoint(m); }

Session Session::regular() {
  constexpr Timestamp hour = 3600 * kNanosPerSecond;
  constexpr Timestamp minute = 60 * kNanosPerSecond;
  return Session{9 * hour + 40 * minute, 15 * hour + 50 * minute};
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ec == std::errc() ? ptr : buf);
}

std::optional<Timestamp> parse_clock(std::string_view text) noexcept {
  auto take_int = [&](std::string_view& s, std::size_t digits, std::int64_t& out) {
    if (s.size() < digits) return false;
    auto [p, ec] = std::from_chars(s.data(), s.data() + digits, out);
    if (ec != std::errc() || p != s.data() + digits) return false;
    s.remove_prefix(digits);
    return true;
  };
  std::int64_t h = 0, m = 0, sec = 0, frac = 0;
  std::string_view s = text;
  if (!take_int(s, 2, h) || s.empty() || s.front() != ':') return std::nullopt;
  s.remove_prefix(1);
  if (!take_int(s, 2, m)) return std::nullopt;
  if (!s.empty()) {
    if (s.front() != ':') return std::nullopt;
    s.remove_prefix(1);
    if (!take_int(s, 2, sec)) return std::nullopt;
    if (!s.empty()) {
      if (s.front() != '.' || s.size() < 2 || s.size() > 10) return std::nullopt;
      s.remove_prefix(1);
      const std::size_t digits = s.size();
      if (!take_int(s, digits, frac)) return std::nullopt;
      for (std::size_t i = digits; i < 9; ++i) frac *= 10;
    }
  }
  if (h > 23 || m > 59 || sec > 59) return std::nullopt;
  return ((h * 60 + m) * 60 + sec) * kNanosPerSecond + frac;
}

std::string format_clock(Timestamp t) {
  const std::int64_t secs = t / kNanosPerSecond;
  const std::int64_t nanos = t % kNanosPerSecond;
  char buf[32];
  if (nanos == 0) {
    std::snprintf(buf, sizeof buf, "%02lld:%02lld:%02lld", static_cast<long long>(secs / 3600),
                  static_cast<long long>(secs / 60 % 60), static_cast<long long>(secs % 60));
  } else {
    std::snprintf(buf, sizeof buf, "%02lld:%02lld:%02lld.%09lld", static_cast<long long>(secs / 3600),
                  static_cast<long long>(secs / 60 % 60), static_cast<long long>(secs % 60),
                  static_cast<long long>(nanos));
  }
  return buf;
}

}  // namespace lobresp
