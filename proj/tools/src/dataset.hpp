#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lobresp/book/order_book.hpp"
#include "lobresp/classify/classifier.hpp"
#include "lobresp/feed/itch.hpp"
#include "lobresp/response/cross.hpp"
#include "lobresp/response/trajectory.hpp"

namespace lobresp::cli {

enum class InputFormat { Auto, Binary, Csv };

struct LoadOptions {
  InputFormat format{InputFormat::Auto};
  const feed::Universe* universe{nullptr};
  Session session{Session::regular()};
  bool merge_trades{true};
};

/// One symbol on one day.
struct SymbolDay {
  std::vector<OrderEvent> events;
  std::vector<book::BookDelta> deltas;
  response::MidpointTrajectory trajectory;
  /// Spread-changing events, trades merged unless disabled.
  response::EventSeries classified;
};

struct InputFile {
  std::string date;  // file stem
  std::filesystem::path path;
  feed::StreamStats stats;
};

/// Every input file is one trading day. Symbols are kept alphabetically and
/// a symbol missing from a day gets an empty entry for that day.
struct Dataset {
  std::vector<InputFile> days;
  std::map<Symbol, std::vector<SymbolDay>> symbols;
  Session session;

  std::vector<Symbol> symbol_list() const;
  /// Spread-changing events of one kind, one series per day.
  std::vector<response::EventSeries> events(const Symbol& s, classify::SpreadChangeKind kind) const;
  /// Every event of a kind (quote-changing or not), one series per day.
  std::vector<response::EventSeries> all_events(const Symbol& s, classify::SpreadChangeKind kind) const;
  std::vector<response::MidpointTrajectory> trajectories(const Symbol& s) const;
  std::vector<response::SymbolSeries> market() const;
};

InputFormat format_for(const std::filesystem::path& path, InputFormat requested);

/// Decodes one file into per-symbol event lists. Throws lobresp::Error.
feed::ParsedStream read_events(const std::filesystem::path& path, InputFormat format,
                               const feed::Universe* universe);

Dataset load_dataset(const std::vector<std::filesystem::path>& inputs, const LoadOptions& options);

}  // namespace lobresp::cli
