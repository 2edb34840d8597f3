#include "lobresp/response/cross.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "kernel.hpp"
#include "lobresp/error.hpp"
#include "lobresp/response/lag_grid.hpp"

namespace lobresp::response {

ResponseCurve cross_response(std::span<const EventSeries> events_i, std::span<const MidpointTrajectory> trajectories_j,
                             std::span<const std::int64_t> lag_seconds) {
  validate_grid(lag_seconds);
  if (events_i.size() != trajectories_j.size()) {
    throw Error(ErrorCode::InvalidConfig, "event days and trajectory days differ in number");
  }
  detail::require_events(events_i, trajectories_j);
  return detail::physical_response(events_i, trajectories_j, lag_seconds);
}

SquareMatrix normalize_off_diagonal(const SquareMatrix& values) {
  const std::size_t n = values.size();
  double largest = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && values(i, j)) largest = std::max(largest, std::fabs(*values(i, j)));
    }
  }
  SquareMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!values(i, j)) continue;
      out(i, j) = largest > 0.0 ? *values(i, j) / largest : 0.0;
    }
  }
  return out;
}

namespace {

std::vector<std::size_t> alphabetical(std::span<const SymbolSeries> market) {
  std::vector<std::size_t> order(market.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return market[a].symbol < market[b].symbol; });
  return order;
}

std::vector<EventSeries> events_of_kind(const SymbolSeries& s, SpreadChangeKind kind) {
  std::vector<EventSeries> out;
  out.reserve(s.days.size());
  for (const auto& day : s.days) out.push_back(classify::filter_kind(day, kind));
  return out;
}

}  // namespace

std::vector<CrossResponseMatrix> cross_matrices(std::span<const SymbolSeries> market,
                                                std::span<const std::int64_t> taus, SpreadChangeKind kind) {
  if (market.size() < 2) throw Error(ErrorCode::FewerThanTwoSymbols, "cross-response needs at least two symbols");
  validate_grid(taus);
  for (const auto& s : market) {
    if (s.days.size() != market.front().days.size() || s.trajectories.size() != s.days.size()) {
      throw Error(ErrorCode::InvalidConfig, "every symbol needs the same number of event days and trajectories");
    }
  }

  const auto order = alphabetical(market);
  const std::size_t n = market.size();
  std::vector<CrossResponseMatrix> matrices(taus.size());
  for (std::size_t l = 0; l < taus.size(); ++l) {
    matrices[l].tau = taus[l];
    matrices[l].values = SquareMatrix(n);
    for (std::size_t idx : order) matrices[l].symbols.push_back(market[idx].symbol);
  }

  // Each (i, j) pair accumulates on its own, so evaluation order cannot change results.
  for (std::size_t row = 0; row < n; ++row) {
    const auto events = events_of_kind(market[order[row]], kind);
    for (std::size_t col = 0; col < n; ++col) {
      const auto curve = detail::physical_response(events, market[order[col]].trajectories, taus);
      for (std::size_t l = 0; l < taus.size(); ++l) matrices[l].values(row, col) = curve.values[l];
    }
  }
  for (auto& m : matrices) m.normalized = normalize_off_diagonal(m.values);
  return matrices;
}

CrossResponseMatrix cross_matrix(std::span<const SymbolSeries> market, std::int64_t tau, SpreadChangeKind kind) {
  const std::int64_t taus[] = {tau};
  return std::move(cross_matrices(market, taus, kind).front());
}

ActivePassive active_passive(const CrossResponseMatrix& matrix) {
  const auto& v = matrix.values;
  const std::size_t n = v.size();
  ActivePassive out;
  out.active.resize(n);
  out.passive.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    detail::CompensatedSum column, row;
    std::size_t column_count = 0, row_count = 0;
    for (std::size_t other = 0; other < n; ++other) {
      if (other == k) continue;
      if (v(other, k)) {
        column.add(*v(other, k));
        ++column_count;
      }
      if (v(k, other)) {
        row.add(*v(k, other));
        ++row_count;
      }
    }
    if (column_count > 0) out.active[k] = column.value() / static_cast<double>(column_count);
    if (row_count > 0) out.passive[k] = row.value() / static_cast<double>(row_count);
  }
  return out;
}

ResponseCurve market_response(std::span<const CrossResponseMatrix> matrices) {
  ResponseCurve curve;
  for (const auto& m : matrices) {
    const std::size_t n = m.values.size();
    if (n < 2) throw Error(ErrorCode::FewerThanTwoSymbols, "market response needs at least two symbols");
    detail::CompensatedSum sum;
    std::uint64_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j || !m.values(i, j)) continue;
        sum.add(*m.values(i, j));
        ++count;
      }
    }
    curve.lags.push_back(m.tau);
    curve.counts.push_back(count);
    curve.values.push_back(count > 0 ? std::optional<double>(sum.value() / static_cast<double>(count))
                                     : std::nullopt);
    curve.boundary_skips.push_back(0);
    curve.undefined_skips.push_back(n * (n - 1) - count);
    curve.events += n * (n - 1);
  }
  return curve;
}

namespace {

void write_optional(std::ostream& out, const std::optional<double>& v) {
  if (v) out << format_double(*v);
}

}  // namespace

void write_matrix_header(std::ostream& out) { out << "tau,row_symbol,col_symbol,R,rho\n"; }

void write_matrix_rows(std::ostream& out, const CrossResponseMatrix& m) {
  const std::size_t n = m.values.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out << m.tau << ',' << m.symbols[i] << ',' << m.symbols[j] << ',';
      write_optional(out, m.values(i, j));
      out << ',';
      write_optional(out, m.normalized(i, j));
      out << '\n';
    }
  }
}

void write_active_passive_header(std::ostream& out) { out << "tau,symbol,active,passive\n"; }

void write_active_passive_rows(std::ostream& out, const CrossResponseMatrix& m, const ActivePassive& ap) {
  for (std::size_t k = 0; k < m.symbols.size(); ++k) {
    out << m.tau << ',' << m.symbols[k] << ',';
    write_optional(out, ap.active[k]);
    out << ',';
    write_optional(out, ap.passive[k]);
    out << '\n';
  }
}

}  // namespace lobresp::response
