#pragma once

#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "lobresp/types.hpp"

namespace lobresp::feed {

/// Column layout of an order-event CSV. Columns are matched by name, so a
/// schema may reorder them, but every canonical column must be present.
struct CsvSchema {
  std::vector<std::string> columns;

  /// timestamp_ns,symbol,kind,order_id,side,price_ticks,shares,new_order_id,new_price_ticks,new_shares
  static CsvSchema canonical();
};

/// Reads events in file order. Fields that do not apply to a row's kind must
/// be empty. Throws SchemaMismatch on a bad header and ParseError (with the
/// line number) on a bad row.
std::vector<OrderEvent> ingest_csv(std::istream& in, const CsvSchema& schema = CsvSchema::canonical());

void write_csv_header(std::ostream& out, const CsvSchema& schema = CsvSchema::canonical());
void write_csv_row(std::ostream& out, const OrderEvent& e, const CsvSchema& schema = CsvSchema::canonical());
void write_csv(std::ostream& out, std::span<const OrderEvent> events,
               const CsvSchema& schema = CsvSchema::canonical());

}  // namespace lobresp::feed
