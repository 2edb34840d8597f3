#pragma once

// Decoder for the supported subset of NASDAQ TotalView-ITCH 5.0.
//
// Framing: every message is preceded by a 2-byte big-endian length that counts
// the whole message, type byte included. All integers are big-endian; prices
// on the wire are in units of 1e-4 and must be whole ticks (multiples of 100).
// docs/FORMAT.md lists the layouts byte by byte.

#include <array>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <variant>
#include <vector>

#include "lobresp/types.hpp"

namespace lobresp::feed {

namespace code {
inline constexpr char kSystemEvent = 'S';
inline constexpr char kStockDirectory = 'R';
inline constexpr char kAddOrder = 'A';
inline constexpr char kAddOrderMpid = 'F';
inline constexpr char kOrderExecuted = 'E';
inline constexpr char kOrderExecutedWithPrice = 'C';
inline constexpr char kOrderCancel = 'X';
inline constexpr char kOrderDelete = 'D';
inline constexpr char kOrderReplace = 'U';
inline constexpr char kTrade = 'P';
inline constexpr char kCrossTrade = 'Q';
}  // namespace code

/// Full message sizes (type byte included) of the fixed layouts we decode.
namespace layout {
inline constexpr std::size_t kHeader = 11;
inline constexpr std::size_t kStockDirectory = 39;
inline constexpr std::size_t kAddOrder = 36;
inline constexpr std::size_t kAddOrderMpid = 40;
inline constexpr std::size_t kOrderExecuted = 31;
inline constexpr std::size_t kOrderExecutedWithPrice = 36;
inline constexpr std::size_t kOrderCancel = 23;
inline constexpr std::size_t kOrderDelete = 19;
inline constexpr std::size_t kOrderReplace = 35;
}  // namespace layout

/// ITCH price units per tick (1e-4 units, tick = 0.01).
inline constexpr std::int64_t kWireUnitsPerTick = 100;
inline constexpr Timestamp kMaxTimestamp = (Timestamp{1} << 48) - 1;

struct RawMessage {
  char kind{0};
  std::span<const std::uint8_t> payload;  // bytes after the type byte
};

/// A framed message together with the byte offset of its length prefix.
struct Frame {
  RawMessage message;
  std::uint64_t offset{0};
};

/// Maps ITCH stock-locate codes to symbols.
class SymbolDirectory {
 public:
  SymbolDirectory();
  void assign(std::uint16_t locate, Symbol symbol);
  std::optional<Symbol> find(std::uint16_t locate) const noexcept;
  std::size_t size() const noexcept { return count_; }

 private:
  std::vector<std::optional<Symbol>> entries_;
  std::size_t count_{0};
};

struct DirectoryEntry {
  std::uint16_t locate{0};
  Symbol symbol;
  friend bool operator==(const DirectoryEntry&, const DirectoryEntry&) = default;
};

struct Skip {
  char kind{0};
  friend bool operator==(const Skip&, const Skip&) = default;
};

using ParsedMessage = std::variant<OrderEvent, DirectoryEntry, Skip>;

/// Decodes one message. Order messages (A F E C X D U) yield an OrderEvent;
/// 'R' yields its directory entry; every other code is skipped.
/// Throws MalformedMessage or UnknownSymbolLocate.
ParsedMessage parse_message(const RawMessage& raw, const SymbolDirectory& directory);

/// Splits a byte source into frames. Throws TruncatedStream when the source
/// ends inside a frame.
class FrameReader {
 public:
  explicit FrameReader(std::span<const std::uint8_t> bytes);
  explicit FrameReader(std::istream& in, std::size_t buffer_size = std::size_t{1} << 20);

  bool next(Frame& out);
  std::uint64_t offset() const noexcept { return consumed_ + pos_; }

 private:
  bool refill(std::size_t need);

  std::istream* in_{nullptr};
  std::vector<std::uint8_t> buffer_;
  std::span<const std::uint8_t> view_;
  std::size_t pos_{0};
  std::uint64_t consumed_{0};
  bool eof_{false};
};

/// Set of symbols to keep. An empty universe accepts nothing; pass a null
/// universe pointer to accept everything.
class Universe {
 public:
  Universe() = default;
  explicit Universe(std::set<Symbol> symbols) : symbols_(std::move(symbols)) {}

  /// One symbol per line; blank lines and '#' comments are ignored.
  static Universe load(std::istream& in);

  bool contains(const Symbol& s) const { return symbols_.contains(s); }
  const std::set<Symbol>& symbols() const noexcept { return symbols_; }
  void insert(Symbol s) { symbols_.insert(s); }

 private:
  std::set<Symbol> symbols_;
};

struct StreamStats {
  std::uint64_t parsed{0};   // order events kept
  std::uint64_t skipped{0};  // administrative and unsupported messages
  std::uint64_t dropped{0};  // order events outside the universe
  friend bool operator==(const StreamStats&, const StreamStats&) = default;
};

/// Incremental decoder: tracks the locate directory and statistics across
/// frames. Errors are rethrown with the frame's byte offset attached.
class FeedDecoder {
 public:
  explicit FeedDecoder(const Universe* universe = nullptr) : universe_(universe) {}

  std::optional<OrderEvent> decode(const Frame& frame);

  const StreamStats& stats() const noexcept { return stats_; }
  const SymbolDirectory& directory() const noexcept { return directory_; }

 private:
  const Universe* universe_;
  SymbolDirectory directory_;
  StreamStats stats_;
};

using Partitions = std::map<Symbol, std::vector<OrderEvent>>;

struct ParsedStream {
  Partitions partitions;
  StreamStats stats;
};

/// Decodes a whole stream into per-symbol, timestamp-ordered partitions.
/// Equal timestamps keep stream order.
ParsedStream parse_stream(FrameReader& reader, const Universe* universe = nullptr);
ParsedStream parse_stream(std::span<const std::uint8_t> bytes, const Universe* universe = nullptr);
ParsedStream parse_stream(std::istream& in, const Universe* universe = nullptr);

/// Stable in-place ordering by timestamp (no-op on already ordered input).
void order_by_timestamp(std::vector<OrderEvent>& events);

/// Splits a mixed-symbol sequence the same way parse_stream does.
Partitions partition_events(std::span<const OrderEvent> events, const Universe* universe = nullptr);

}  // namespace lobresp::feed
