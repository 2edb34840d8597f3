#include "lobresp/feed/csv.hpp"

#include <array>
#include <charconv>
#include <limits>
#include <string_view>

#include "lobresp/error.hpp"

namespace lobresp::feed {

namespace {

enum Column : std::size_t {
  kTimestamp,
  kSymbol,
  kKind,
  kOrderId,
  kSide,
  kPrice,
  kShares,
  kNewOrderId,
  kNewPrice,
  kNewShares,
  kColumnCount
};

constexpr std::array<std::string_view, kColumnCount> kNames{
    "timestamp_ns", "symbol", "kind", "order_id", "side", "price_ticks", "shares", "new_order_id",
    "new_price_ticks", "new_shares"};

using Layout = std::array<std::size_t, kColumnCount>;  // canonical column -> position in row

Layout resolve_layout(const CsvSchema& schema) {
  if (schema.columns.size() != kColumnCount) {
    throw Error(ErrorCode::SchemaMismatch, "schema must name exactly " + std::to_string(kColumnCount) + " columns");
  }
  Layout layout;
  layout.fill(kColumnCount);
  for (std::size_t pos = 0; pos < schema.columns.size(); ++pos) {
    std::size_t col = 0;
    while (col < kColumnCount && kNames[col] != schema.columns[pos]) ++col;
    if (col == kColumnCount || layout[col] != kColumnCount) {
      throw Error(ErrorCode::SchemaMismatch, "unknown or repeated column '" + schema.columns[pos] + "'");
    }
    layout[col] = pos;
  }
  return layout;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

class RowReader {
 public:
  RowReader(std::vector<std::string_view> fields, const Layout& layout, std::uint64_t line)
      : fields_(std::move(fields)), layout_(layout), line_(line) {}

  std::string_view field(Column c) const { return fields_[layout_[c]]; }
  bool empty(Column c) const { return field(c).empty(); }

  template <class T>
  T number(Column c) const {
    const auto text = field(c);
    T value{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
      fail(std::string(kNames[c]) + " is not a valid number: '" + std::string(text) + "'");
    }
    return value;
  }

  template <class T>
  T positive(Column c) const {
    const T v = number<T>(c);
    if (v <= 0) fail(std::string(kNames[c]) + " must be positive");
    return v;
  }

  void require_empty(std::initializer_list<Column> columns, std::string_view kind) const {
    for (Column c : columns) {
      if (!empty(c)) fail(std::string(kNames[c]) + " must be empty for kind " + std::string(kind));
    }
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw Error::at_line(ErrorCode::ParseError, "line " + std::to_string(line_) + ": " + why, line_);
  }

 private:
  std::vector<std::string_view> fields_;
  const Layout& layout_;
  std::uint64_t line_;
};

Shares to_shares(const RowReader& row, Column c) {
  const auto v = row.positive<std::uint64_t>(c);
  if (v > std::numeric_limits<Shares>::max()) row.fail(std::string(kNames[c]) + " out of range");
  return static_cast<Shares>(v);
}

OrderEvent parse_row(const RowReader& row) {
  OrderEvent e;
  e.timestamp = row.number<Timestamp>(kTimestamp);
  if (e.timestamp < 0) row.fail("negative timestamp");
  try {
    e.symbol = Symbol(row.field(kSymbol));
  } catch (const Error& err) {
    row.fail(err.what());
  }
  const auto kind_text = row.field(kKind);
  const auto kind = event_kind_from_string(kind_text);
  if (!kind) row.fail("unknown kind '" + std::string(kind_text) + "'");
  e.kind = *kind;
  e.order_id = row.number<OrderId>(kOrderId);

  switch (e.kind) {
    case EventKind::Add: {
      const auto side = row.field(kSide);
      if (side == "bid") {
        e.side = Side::Bid;
      } else if (side == "ask") {
        e.side = Side::Ask;
      } else {
        row.fail("side must be bid or ask for kind add");
      }
      e.price = row.positive<Ticks>(kPrice);
      e.shares = to_shares(row, kShares);
      row.require_empty({kNewOrderId, kNewPrice, kNewShares}, kind_text);
      break;
    }
    case EventKind::Execute:
      if (!row.empty(kPrice)) e.price = row.positive<Ticks>(kPrice);
      e.shares = to_shares(row, kShares);
      row.require_empty({kSide, kNewOrderId, kNewPrice, kNewShares}, kind_text);
      break;
    case EventKind::Cancel:
      e.shares = to_shares(row, kShares);
      row.require_empty({kSide, kPrice, kNewOrderId, kNewPrice, kNewShares}, kind_text);
      break;
    case EventKind::Delete:
      row.require_empty({kSide, kPrice, kShares, kNewOrderId, kNewPrice, kNewShares}, kind_text);
      break;
    case EventKind::Replace: {
      row.require_empty({kSide, kPrice, kShares}, kind_text);
      Replacement r;
      r.new_order_id = row.number<OrderId>(kNewOrderId);
      r.new_price = row.positive<Ticks>(kNewPrice);
      r.new_shares = to_shares(row, kNewShares);
      e.replacement = r;
      break;
    }
  }
  return e;
}

}  // namespace

CsvSchema CsvSchema::canonical() {
  CsvSchema s;
  for (auto name : kNames) s.columns.emplace_back(name);
  return s;
}

std::vector<OrderEvent> ingest_csv(std::istream& in, const CsvSchema& schema) {
  const Layout layout = resolve_layout(schema);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::SchemaMismatch, "missing header row");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split(line);
  if (header.size() != schema.columns.size()) {
    throw Error(ErrorCode::SchemaMismatch, "header has " + std::to_string(header.size()) + " columns, schema expects " +
                                               std::to_string(schema.columns.size()));
  }
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] != schema.columns[i]) {
      throw Error(ErrorCode::SchemaMismatch,
                  "header column " + std::to_string(i + 1) + " is '" + std::string(header[i]) + "', expected '" +
                      schema.columns[i] + "'");
    }
  }

  std::vector<OrderEvent> events;
  std::uint64_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split(line);
    if (fields.size() != kColumnCount) {
      throw Error::at_line(ErrorCode::ParseError,
                           "line " + std::to_string(line_no) + ": expected " + std::to_string(kColumnCount) +
                               " fields, got " + std::to_string(fields.size()),
                           line_no);
    }
    events.push_back(parse_row(RowReader(std::move(fields), layout, line_no)));
  }
  return events;
}

void write_csv_header(std::ostream& out, const CsvSchema& schema) {
  for (std::size_t i = 0; i < schema.columns.size(); ++i) out << (i ? "," : "") << schema.columns[i];
  out << '\n';
}

void write_csv_row(std::ostream& out, const OrderEvent& e, const CsvSchema& schema) {
  const Layout layout = resolve_layout(schema);
  std::array<std::string, kColumnCount> cells;
  cells[kTimestamp] = std::to_string(e.timestamp);
  cells[kSymbol] = e.symbol.str();
  cells[kKind] = to_string(e.kind);
  cells[kOrderId] = std::to_string(e.order_id);
  if (e.side) cells[kSide] = to_string(*e.side);
  if (e.price != 0) cells[kPrice] = std::to_string(e.price);
  if (e.shares != 0) cells[kShares] = std::to_string(e.shares);
  if (e.replacement) {
    cells[kNewOrderId] = std::to_string(e.replacement->new_order_id);
    cells[kNewPrice] = std::to_string(e.replacement->new_price);
    cells[kNewShares] = std::to_string(e.replacement->new_shares);
  }
  std::array<const std::string*, kColumnCount> ordered{};
  for (std::size_t c = 0; c < kColumnCount; ++c) ordered[layout[c]] = &cells[c];
  for (std::size_t i = 0; i < kColumnCount; ++i) out << (i ? "," : "") << *ordered[i];
  out << '\n';
}

void write_csv(std::ostream& out, std::span<const OrderEvent> events, const CsvSchema& schema) {
  write_csv_header(out, schema);
  for (const auto& e : events) write_csv_row(out, e, schema);
}

}  // namespace lobresp::feed
