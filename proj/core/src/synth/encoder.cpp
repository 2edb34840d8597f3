#include "lobresp/synth/encoder.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>
#include <string>

#include "lobresp/error.hpp"
#include "lobresp/feed/itch.hpp"

namespace lobresp::synth {

namespace {

[[noreturn]] void unencodable(const OrderEvent& e, const std::string& why) {
  std::ostringstream os;
  os << "cannot encode " << e << ": " << why;
  throw Error(ErrorCode::UnencodableEvent, os.str());
}

class Writer {
 public:
  explicit Writer(std::size_t size) : bytes_(size, 0) {}

  Writer& put(std::size_t off, std::uint64_t v, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) bytes_[off + i] = static_cast<std::uint8_t>(v >> (8 * (n - 1 - i)));
    return *this;
  }
  Writer& ch(std::size_t off, char c) {
    bytes_[off] = static_cast<std::uint8_t>(c);
    return *this;
  }
  Writer& symbol(std::size_t off, const Symbol& s) {
    for (std::size_t i = 0; i < Symbol::kWidth; ++i) bytes_[off + i] = static_cast<std::uint8_t>(s.padded()[i]);
    return *this;
  }
  std::vector<std::uint8_t> take() { return std::move(bytes_); }

 private:
  std::vector<std::uint8_t> bytes_;
};

// Message offsets (type byte at 0).
constexpr std::size_t kLocate = 1;
constexpr std::size_t kTracking = 3;
constexpr std::size_t kTimestamp = 5;
constexpr std::size_t kRef = 11;

Writer header(std::size_t size, char kind, std::uint16_t locate, Timestamp ts, OrderId ref) {
  Writer w(size);
  w.ch(0, kind).put(kLocate, locate, 2).put(kTracking, 0, 2).put(kTimestamp, static_cast<std::uint64_t>(ts), 6);
  w.put(kRef, ref, 8);
  return w;
}

std::uint32_t wire_price(const OrderEvent& e, Ticks price) {
  constexpr auto kMax = std::numeric_limits<std::uint32_t>::max() / feed::kWireUnitsPerTick;
  if (price <= 0 || price > static_cast<Ticks>(kMax)) unencodable(e, "price outside the 32-bit wire range");
  return static_cast<std::uint32_t>(price * feed::kWireUnitsPerTick);
}

void require(bool ok, const OrderEvent& e, const char* why) {
  if (!ok) unencodable(e, why);
}

}  // namespace

std::vector<std::uint8_t> encode_message(const OrderEvent& e, std::uint16_t locate) {
  require(e.timestamp >= 0 && e.timestamp <= feed::kMaxTimestamp, e, "timestamp outside 48 bits");
  require(!e.symbol.empty(), e, "empty symbol");
  require(e.kind == EventKind::Add || !e.side, e, "only add orders carry a side");
  require(e.kind == EventKind::Replace || !e.replacement, e, "only replaces carry a replacement");

  switch (e.kind) {
    case EventKind::Add: {
      require(e.side.has_value(), e, "add without side");
      require(e.shares > 0, e, "add without shares");
      const auto price = wire_price(e, e.price);
      auto w = header(feed::layout::kAddOrder, feed::code::kAddOrder, locate, e.timestamp, e.order_id);
      w.ch(19, *e.side == Side::Bid ? 'B' : 'S').put(20, e.shares, 4).symbol(24, e.symbol).put(32, price, 4);
      return w.take();
    }
    case EventKind::Execute: {
      require(e.shares > 0, e, "execution without shares");
      if (e.price == 0) {
        auto w = header(feed::layout::kOrderExecuted, feed::code::kOrderExecuted, locate, e.timestamp, e.order_id);
        w.put(19, e.shares, 4).put(23, 0, 8);
        return w.take();
      }
      const auto price = wire_price(e, e.price);
      auto w = header(feed::layout::kOrderExecutedWithPrice, feed::code::kOrderExecutedWithPrice, locate, e.timestamp,
                      e.order_id);
      w.put(19, e.shares, 4).put(23, 0, 8).ch(31, 'Y').put(32, price, 4);
      return w.take();
    }
    case EventKind::Cancel: {
      require(e.shares > 0 && e.price == 0, e, "cancel needs shares and no price");
      auto w = header(feed::layout::kOrderCancel, feed::code::kOrderCancel, locate, e.timestamp, e.order_id);
      w.put(19, e.shares, 4);
      return w.take();
    }
    case EventKind::Delete: {
      require(e.shares == 0 && e.price == 0, e, "delete carries neither shares nor price");
      return header(feed::layout::kOrderDelete, feed::code::kOrderDelete, locate, e.timestamp, e.order_id).take();
    }
    case EventKind::Replace: {
      require(e.replacement.has_value(), e, "replace without replacement");
      require(e.shares == 0 && e.price == 0, e, "replace keeps its fields in the replacement");
      const auto& r = *e.replacement;
      require(r.new_shares > 0, e, "replacement without shares");
      const auto price = wire_price(e, r.new_price);
      auto w = header(feed::layout::kOrderReplace, feed::code::kOrderReplace, locate, e.timestamp, e.order_id);
      w.put(19, r.new_order_id, 8).put(27, r.new_shares, 4).put(31, price, 4);
      return w.take();
    }
  }
  unencodable(e, "unknown event kind");
}

std::vector<std::uint8_t> encode_directory(std::uint16_t locate, const Symbol& symbol, Timestamp timestamp) {
  Writer w(feed::layout::kStockDirectory);
  w.ch(0, feed::code::kStockDirectory).put(kLocate, locate, 2).put(kTracking, 0, 2);
  w.put(kTimestamp, static_cast<std::uint64_t>(timestamp), 6).symbol(11, symbol);
  // Market category, financial status, round lot size, ... are left as
  // plausible constants.
  w.ch(19, 'Q').ch(20, 'N').put(21, 100, 4).ch(25, 'Y').ch(26, 'C').ch(27, ' ').ch(28, ' ').ch(29, 'P');
  w.ch(30, 'N').ch(31, 'N').ch(32, '1').ch(33, 'N').put(34, 0, 4).ch(38, 'N');
  return w.take();
}

StreamEncoder::StreamEncoder(std::ostream& out, std::span<const Symbol> symbols, Timestamp directory_time)
    : out_(out) {
  const std::set<Symbol> sorted(symbols.begin(), symbols.end());
  if (sorted.size() > std::numeric_limits<std::uint16_t>::max()) {
    throw Error(ErrorCode::UnencodableEvent, "more symbols than stock locate codes");
  }
  std::uint16_t locate = 0;
  for (const auto& s : sorted) {
    locates_.emplace(s, ++locate);
    frame(encode_directory(locate, s, directory_time));
  }
}

StreamEncoder::~StreamEncoder() {
  try {
    flush();
  } catch (...) {
  }
}

void StreamEncoder::write(const OrderEvent& e) {
  auto it = locates_.find(e.symbol);
  if (it == locates_.end()) unencodable(e, "symbol missing from the stream directory");
  frame(encode_message(e, it->second));
}

void StreamEncoder::frame(std::span<const std::uint8_t> message) {
  buffer_.push_back(static_cast<std::uint8_t>(message.size() >> 8));
  buffer_.push_back(static_cast<std::uint8_t>(message.size()));
  buffer_.insert(buffer_.end(), message.begin(), message.end());
  ++messages_;
  if (buffer_.size() >= (std::size_t{1} << 16)) flush();
}

void StreamEncoder::flush() {
  if (buffer_.empty()) return;
  out_.write(reinterpret_cast<const char*>(buffer_.data()), static_cast<std::streamsize>(buffer_.size()));
  buffer_.clear();
  if (!out_) throw Error(ErrorCode::Io, "write failed");
}

namespace {

std::vector<Symbol> symbols_of(std::span<const OrderEvent> events) {
  std::set<Symbol> seen;
  for (const auto& e : events) seen.insert(e.symbol);
  return {seen.begin(), seen.end()};
}

}  // namespace

void encode(std::span<const OrderEvent> events, std::ostream& out) {
  const auto symbols = symbols_of(events);
  StreamEncoder encoder(out, symbols, events.empty() ? 0 : std::max<Timestamp>(0, events.front().timestamp));
  for (const auto& e : events) encoder.write(e);
  encoder.flush();
}

std::vector<std::uint8_t> encode(std::span<const OrderEvent> events) {
  std::ostringstream os;
  encode(events, os);
  const std::string s = std::move(os).str();
  return {s.begin(), s.end()};
}

}  // namespace lobresp::synth
