#include "dataset.hpp"

#include <fstream>
#include <future>

#include "lobresp/error.hpp"
#include "lobresp/feed/csv.hpp"

namespace lobresp::cli {

InputFormat format_for(const std::filesystem::path& path, InputFormat requested) {
  if (requested != InputFormat::Auto) return requested;
  return path.extension() == ".csv" ? InputFormat::Csv : InputFormat::Binary;
}

feed::ParsedStream read_events(const std::filesystem::path& path, InputFormat format,
                               const feed::Universe* universe) {
  const bool csv = format_for(path, format) == InputFormat::Csv;
  std::ifstream in(path, csv ? std::ios::in : std::ios::in | std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  if (!csv) return feed::parse_stream(in, universe);

  auto events = feed::ingest_csv(in);
  feed::ParsedStream out;
  for (const auto& e : events) {
    if (universe && !universe->contains(e.symbol)) {
      ++out.stats.dropped;
    } else {
      ++out.stats.parsed;
    }
  }
  out.partitions = feed::partition_events(events, universe);
  return out;
}

namespace {

SymbolDay build_day(const Symbol& symbol, std::vector<OrderEvent> events, const LoadOptions& options) {
  SymbolDay day;
  day.events = std::move(events);
  book::OrderBook book;
  day.deltas = book::replay(day.events, book);
  day.trajectory = response::MidpointTrajectory::from_deltas(symbol, day.deltas, options.session);
  auto classified = classify::classify_all(day.deltas);
  day.classified = options.merge_trades ? classify::aggregate_trades(classified) : std::move(classified);
  return day;
}

}  // namespace

Dataset load_dataset(const std::vector<std::filesystem::path>& inputs, const LoadOptions& options) {
  Dataset data;
  data.session = options.session;

  // Files and then symbols are processed concurrently; results land in
  // fixed slots so the output never depends on scheduling.
  std::vector<std::future<feed::ParsedStream>> reading;
  for (const auto& path : inputs) {
    reading.push_back(std::async(std::launch::async, [&options, path] {
      return read_events(path, options.format, options.universe);
    }));
  }
  std::vector<feed::Partitions> parsed;
  for (std::size_t d = 0; d < inputs.size(); ++d) {
    auto stream = reading[d].get();
    data.days.push_back({inputs[d].stem().string(), inputs[d], stream.stats});
    parsed.push_back(std::move(stream.partitions));
  }
  for (const auto& partitions : parsed) {
    for (const auto& [symbol, events] : partitions) data.symbols[symbol];
  }

  std::vector<std::future<std::vector<SymbolDay>>> building;
  for (const auto& [symbol, unused] : data.symbols) {
    std::vector<std::vector<OrderEvent>> per_day;
    for (auto& partitions : parsed) {
      auto it = partitions.find(symbol);
      per_day.push_back(it == partitions.end() ? std::vector<OrderEvent>{} : std::move(it->second));
    }
    building.push_back(std::async(std::launch::async, [&options, symbol, per_day = std::move(per_day)]() mutable {
      std::vector<SymbolDay> days;
      days.reserve(per_day.size());
      for (auto& events : per_day) days.push_back(build_day(symbol, std::move(events), options));
      return days;
    }));
  }
  std::size_t k = 0;
  for (auto& [symbol, days] : data.symbols) days = building[k++].get();
  return data;
}

std::vector<Symbol> Dataset::symbol_list() const {
  std::vector<Symbol> out;
  for (const auto& [s, d] : symbols) out.push_back(s);
  return out;
}

std::vector<response::EventSeries> Dataset::events(const Symbol& s, classify::SpreadChangeKind kind) const {
  std::vector<response::EventSeries> out;
  for (const auto& day : symbols.at(s)) out.push_back(classify::filter_kind(day.classified, kind));
  return out;
}

std::vector<response::EventSeries> Dataset::all_events(const Symbol& s, classify::SpreadChangeKind kind) const {
  std::vector<response::EventSeries> out;
  for (const auto& day : symbols.at(s)) out.push_back(classify::label_all(day.deltas, kind));
  return out;
}

std::vector<response::MidpointTrajectory> Dataset::trajectories(const Symbol& s) const {
  std::vector<response::MidpointTrajectory> out;
  for (const auto& day : symbols.at(s)) out.push_back(day.trajectory);
  return out;
}

std::vector<response::SymbolSeries> Dataset::market() const {
  std::vector<response::SymbolSeries> out;
  for (const auto& [symbol, days] : symbols) {
    response::SymbolSeries series;
    series.symbol = symbol;
    for (const auto& day : days) {
      series.days.push_back(day.classified);
      series.trajectories.push_back(day.trajectory);
    }
    out.push_back(std::move(series));
  }
  return out;
}

}  // namespace lobresp::cli
