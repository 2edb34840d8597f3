#include "lobresp/error.hpp"

namespace lobresp {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MalformedMessage: return "MalformedMessage";
    case ErrorCode::UnknownSymbolLocate: return "UnknownSymbolLocate";
    case ErrorCode::TruncatedStream: return "TruncatedStream";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownOrderId: return "UnknownOrderId";
    case ErrorCode::DuplicateOrderId: return "DuplicateOrderId";
    case ErrorCode::Overfill: return "Overfill";
    case ErrorCode::CrossedBookProduced: return "CrossedBookProduced";
    case ErrorCode::OutOfOrderTimestamp: return "OutOfOrderTimestamp";
    case ErrorCode::NoDefinedSpread: return "NoDefinedSpread";
    case ErrorCode::UnclassifiableDelta: return "UnclassifiableDelta";
    case ErrorCode::EmptyEventList: return "EmptyEventList";
    case ErrorCode::UndefinedMidpoint: return "UndefinedMidpoint";
    case ErrorCode::EmptyGrid: return "EmptyGrid";
    case ErrorCode::NoEvents: return "NoEvents";
    case ErrorCode::FewerThanTwoSymbols: return "FewerThanTwoSymbols";
    case ErrorCode::InfeasibleConfig: return "InfeasibleConfig";
    case ErrorCode::UnencodableEvent: return "UnencodableEvent";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what) : Error(code, what, std::nullopt, std::nullopt) {}

Error::Error(ErrorCode code, const std::string& what, std::optional<std::uint64_t> offset,
             std::optional<std::uint64_t> line)
    : std::runtime_error(what), code_(code), offset_(offset), line_(line) {}

}  // namespace lobresp
