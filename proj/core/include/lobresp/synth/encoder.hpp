#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <span>
#include <vector>

#include "lobresp/types.hpp"

namespace lobresp::synth {

/// One unframed ITCH message (type byte first) for an order event.
/// Throws UnencodableEvent when the event cannot be represented exactly.
std::vector<std::uint8_t> encode_message(const OrderEvent& e, std::uint16_t locate);

/// Unframed stock directory ('R') message.
std::vector<std::uint8_t> encode_directory(std::uint16_t locate, const Symbol& symbol, Timestamp timestamp);

/// Writes a framed binary stream: one directory message per symbol
/// (locates 1..N in alphabetical order) followed by the events as given.
class StreamEncoder {
 public:
  StreamEncoder(std::ostream& out, std::span<const Symbol> symbols, Timestamp directory_time = 0);
  ~StreamEncoder();
  StreamEncoder(const StreamEncoder&) = delete;
  StreamEncoder& operator=(const StreamEncoder&) = delete;

  void write(const OrderEvent& e);
  void flush();
  std::uint64_t messages() const noexcept { return messages_; }

 private:
  void frame(std::span<const std::uint8_t> message);

  std::ostream& out_;
  std::map<Symbol, std::uint16_t> locates_;
  std::vector<std::uint8_t> buffer_;
  std::uint64_t messages_{0};
};

/// Encodes a whole event list; an empty list gives an empty stream.
std::vector<std::uint8_t> encode(std::span<const OrderEvent> events);
void encode(std::span<const OrderEvent> events, std::ostream& out);

}  // namespace lobresp::synth
