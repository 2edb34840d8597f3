#include "lobresp/feed/itch.hpp"

#include <algorithm>
#include <cstring>
#include <string>

#include "lobresp/error.hpp"

namespace lobresp::feed {

namespace {

// Payload offsets are message offsets minus one (the type byte is split off).
constexpr std::size_t kLocate = 0;
constexpr std::size_t kTimestamp = 4;
constexpr std::size_t kBody = 10;

std::uint64_t read_be(const std::uint8_t* p, std::size_t n) noexcept {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < n; ++i) v = (v << 8) | p[i];
  return v;
}

struct Cursor {
  std::span<const std::uint8_t> bytes;
  std::uint16_t u16(std::size_t off) const noexcept { return static_cast<std::uint16_t>(read_be(&bytes[off], 2)); }
  std::uint32_t u32(std::size_t off) const noexcept { return static_cast<std::uint32_t>(read_be(&bytes[off], 4)); }
  std::uint64_t u48(std::size_t off) const noexcept { return read_be(&bytes[off], 6); }
  std::uint64_t u64(std::size_t off) const noexcept { return read_be(&bytes[off], 8); }
  char ch(std::size_t off) const noexcept { return static_cast<char>(bytes[off]); }
  std::string_view text(std::size_t off, std::size_t n) const noexcept {
    return {reinterpret_cast<const char*>(&bytes[off]), n};
  }
};

[[noreturn]] void malformed(char kind, const std::string& why) {
  throw Error(ErrorCode::MalformedMessage, std::string("message '") + kind + "': " + why);
}

void require_size(const RawMessage& raw, std::size_t full_size) {
  if (raw.payload.size() + 1 < full_size) {
    malformed(raw.kind, "payload of " + std::to_string(raw.payload.size()) + " bytes, layout needs " +
                            std::to_string(full_size - 1));
  }
}

Ticks to_ticks(char kind, std::uint32_t wire) {
  if (wire % kWireUnitsPerTick != 0) malformed(kind, "price " + std::to_string(wire) + " is not a whole tick");
  return static_cast<Ticks>(wire / kWireUnitsPerTick);
}

Symbol resolve(const Cursor& c, const SymbolDirectory& directory) {
  const std::uint16_t locate = c.u16(kLocate);
  auto symbol = directory.find(locate);
  if (!symbol) throw Error(ErrorCode::UnknownSymbolLocate, "stock locate " + std::to_string(locate) + " not in directory");
  return *symbol;
}

OrderEvent header_event(const Cursor& c, EventKind kind) {
  OrderEvent e;
  e.timestamp = static_cast<Timestamp>(c.u48(kTimestamp));
  e.kind = kind;
  e.order_id = c.u64(kBody);
  return e;
}

}  // namespace

SymbolDirectory::SymbolDirectory() : entries_(std::size_t{1} << 16) {}

void SymbolDirectory::assign(std::uint16_t locate, Symbol symbol) {
  if (!entries_[locate]) ++count_;
  entries_[locate] = symbol;
}

std::optional<Symbol> SymbolDirectory::find(std::uint16_t locate) const noexcept { return entries_[locate]; }

ParsedMessage parse_message(const RawMessage& raw, const SymbolDirectory& directory) {
  const Cursor c{raw.payload};
  switch (raw.kind) {
    case code::kAddOrder:
    case code::kAddOrderMpid: {
      require_size(raw, raw.kind == code::kAddOrder ? layout::kAddOrder : layout::kAddOrderMpid);
      OrderEvent e = header_event(c, EventKind::Add);
      const char side = c.ch(18);
      if (side == 'B') {
        e.side = Side::Bid;
      } else if (side == 'S') {
        e.side = Side::Ask;
      } else {
        malformed(raw.kind, std::string("bad buy/sell indicator '") + side + "'");
      }
      e.shares = c.u32(19);
      auto symbol = Symbol::from_padded(c.text(23, Symbol::kWidth));
      if (!symbol) malformed(raw.kind, "bad stock field");
      e.symbol = *symbol;
      e.price = to_ticks(raw.kind, c.u32(31));
      if (e.shares == 0) malformed(raw.kind, "zero shares");
      if (e.price <= 0) malformed(raw.kind, "non-positive price");
      return e;
    }
    case code::kOrderExecuted:
    case code::kOrderExecutedWithPrice: {
      const bool priced = raw.kind == code::kOrderExecutedWithPrice;
      require_size(raw, priced ? layout::kOrderExecutedWithPrice : layout::kOrderExecuted);
      OrderEvent e = header_event(c, EventKind::Execute);
      e.symbol = resolve(c, directory);
      e.shares = c.u32(18);
      if (priced) {
        e.price = to_ticks(raw.kind, c.u32(31));
        if (e.price <= 0) malformed(raw.kind, "non-positive execution price");
      }
      if (e.shares == 0) malformed(raw.kind, "zero shares");
      return e;
    }
    case code::kOrderCancel: {
      require_size(raw, layout::kOrderCancel);
      OrderEvent e = header_event(c, EventKind::Cancel);
      e.symbol = resolve(c, directory);
      e.shares = c.u32(18);
      if (e.shares == 0) malformed(raw.kind, "zero shares");
      return e;
    }
    case code::kOrderDelete: {
      require_size(raw, layout::kOrderDelete);
      OrderEvent e = header_event(c, EventKind::Delete);
      e.symbol = resolve(c, directory);
      return e;
    }
    case code::kOrderReplace: {
      require_size(raw, layout::kOrderReplace);
      OrderEvent e = header_event(c, EventKind::Replace);
      e.symbol = resolve(c, directory);
      Replacement r;
      r.new_order_id = c.u64(18);
      r.new_shares = c.u32(26);
      r.new_price = to_ticks(raw.kind, c.u32(30));
      if (r.new_shares == 0) malformed(raw.kind, "zero shares");
      if (r.new_price <= 0) malformed(raw.kind, "non-positive price");
      e.replacement = r;
      return e;
    }
    case code::kStockDirectory: {
      require_size(raw, layout::kStockDirectory);
      auto symbol = Symbol::from_padded(c.text(10, Symbol::kWidth));
      if (!symbol) malformed(raw.kind, "bad stock field");
      return DirectoryEntry{c.u16(kLocate), *symbol};
    }
    default:
      return Skip{raw.kind};
  }
}

FrameReader::FrameReader(std::span<const std::uint8_t> bytes) : view_(bytes), eof_(true) {}

FrameReader::FrameReader(std::istream& in, std::size_t buffer_size) : in_(&in), buffer_(buffer_size) {}

bool FrameReader::refill(std::size_t need) {
  // Ensures `need` bytes are available at pos_; false when the source is exhausted first.
  while (view_.size() - pos_ < need) {
    if (eof_ || in_ == nullptr) return false;
    const std::size_t remaining = view_.size() - pos_;
    if (need > buffer_.size()) buffer_.resize(need);
    if (remaining > 0) std::memmove(buffer_.data(), view_.data() + pos_, remaining);
    consumed_ += pos_;
    pos_ = 0;
    in_->read(reinterpret_cast<char*>(buffer_.data() + remaining),
              static_cast<std::streamsize>(buffer_.size() - remaining));
    const auto got = static_cast<std::size_t>(in_->gcount());
    if (got == 0 || in_->eof()) eof_ = true;
    if (in_->bad()) throw Error(ErrorCode::Io, "read error on feed stream");
    view_ = std::span<const std::uint8_t>(buffer_.data(), remaining + got);
  }
  return true;
}

bool FrameReader::next(Frame& out) {
  if (!refill(2)) {
    if (view_.size() == pos_) return false;
    throw Error::at_offset(ErrorCode::TruncatedStream, "stream ends inside a length prefix", offset());
  }
  const std::size_t length = static_cast<std::size_t>(read_be(view_.data() + pos_, 2));
  if (!refill(2 + length)) {
    throw Error::at_offset(ErrorCode::TruncatedStream,
                           "stream ends inside a " + std::to_string(length) + "-byte message", offset());
  }
  out.offset = offset();
  if (length == 0) {
    throw Error::at_offset(ErrorCode::MalformedMessage, "zero-length frame", out.offset);
  }
  out.message.kind = static_cast<char>(view_[pos_ + 2]);
  out.message.payload = view_.subspan(pos_ + 3, length - 1);
  pos_ += 2 + length;
  return true;
}

Universe Universe::load(std::istream& in) {
  Universe u;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    u.insert(Symbol(std::string_view(line).substr(first, last - first + 1)));
  }
  return u;
}

std::optional<OrderEvent> FeedDecoder::decode(const Frame& frame) {
  ParsedMessage parsed;
  try {
    parsed = parse_message(frame.message, directory_);
  } catch (const Error& e) {
    throw Error::at_offset(e.code(), std::string(e.what()) + " at byte offset " + std::to_string(frame.offset),
                           frame.offset);
  }
  if (auto* event = std::get_if<OrderEvent>(&parsed)) {
    if (universe_ != nullptr && !universe_->contains(event->symbol)) {
      ++stats_.dropped;
      return std::nullopt;
    }
    ++stats_.parsed;
    return std::move(*event);
  }
  if (auto* entry = std::get_if<DirectoryEntry>(&parsed)) directory_.assign(entry->locate, entry->symbol);
  ++stats_.skipped;
  return std::nullopt;
}

void order_by_timestamp(std::vector<OrderEvent>& events) {
  auto by_time = [](const OrderEvent& a, const OrderEvent& b) { return a.timestamp < b.timestamp; };
  if (!std::is_sorted(events.begin(), events.end(), by_time)) {
    std::stable_sort(events.begin(), events.end(), by_time);
  }
}

Partitions partition_events(std::span<const OrderEvent> events, const Universe* universe) {
  Partitions out;
  for (const auto& e : events) {
    if (universe == nullptr || universe->contains(e.symbol)) out[e.symbol].push_back(e);
  }
  for (auto& [symbol, list] : out) order_by_timestamp(list);
  return out;
}

ParsedStream parse_stream(FrameReader& reader, const Universe* universe) {
  FeedDecoder decoder(universe);
  ParsedStream out;
  Frame frame;
  while (reader.next(frame)) {
    if (auto event = decoder.decode(frame)) out.partitions[event->symbol].push_back(std::move(*event));
  }
  for (auto& [symbol, events] : out.partitions) order_by_timestamp(events);
  out.stats = decoder.stats();
  return out;
}

ParsedStream parse_stream(std::span<const std::uint8_t> bytes, const Universe* universe) {
  FrameReader reader(bytes);
  return parse_stream(reader, universe);
}

ParsedStream parse_stream(std::istream& in, const Universe* universe) {
  FrameReader reader(in);
  return parse_stream(reader, universe);
}

}  // namespace lobresp::feed
