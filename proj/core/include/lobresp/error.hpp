#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lobresp {

enum class ErrorCode {
  // feed
  MalformedMessage,
  UnknownSymbolLocate,
  TruncatedStream,
  SchemaMismatch,
  ParseError,
  // book
  UnknownOrderId,
  DuplicateOrderId,
  Overfill,
  CrossedBookProduced,
  OutOfOrderTimestamp,
  NoDefinedSpread,
  // classifier
  UnclassifiableDelta,
  EmptyEventList,
  // response
  UndefinedMidpoint,
  EmptyGrid,
  NoEvents,
  FewerThanTwoSymbols,
  // synthgen
  InfeasibleConfig,
  UnencodableEvent,
  InvalidConfig,
  // io
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure in the library surfaces as this exception. Feed errors carry
/// the byte offset of the offending frame, CSV errors the 1-based line number.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  Error(ErrorCode code, const std::string& what, std::optional<std::uint64_t> offset,
        std::optional<std::uint64_t> line);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::uint64_t> offset() const noexcept { return offset_; }
  std::optional<std::uint64_t> line() const noexcept { return line_; }

  static Error at_offset(ErrorCode code, const std::string& what, std::uint64_t offset) {
    return Error(code, what, offset, std::nullopt);
  }
  static Error at_line(ErrorCode code, const std::string& what, std::uint64_t line) {
    return Error(code, what, std::nullopt, line);
  }

 private:
  ErrorCode code_;
  std::optional<std::uint64_t> offset_;
  std::optional<std::uint64_t> line_;
};

}  // namespace lobresp
