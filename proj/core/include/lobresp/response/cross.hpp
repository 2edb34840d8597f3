#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "lobresp/response/response.hpp"

namespace lobresp::response {

/// <eps_i(t) [ln m_j(t + tau) - ln m_j(t - delta)]>_t on the physical scale.
/// For j != i, m_j(t - delta) is the last midpoint of j strictly before t;
/// events with no such midpoint are skipped. When the trajectory belongs to
/// the event's own symbol the event's pre-event midpoint is used, so the
/// i == j case is exactly self_response_physical.
ResponseCurve cross_response(std::span<const EventSeries> events_i, std::span<const MidpointTrajectory> trajectories_j,
                             std::span<const std::int64_t> lag_seconds);

/// All days of one symbol: events (any kinds) and the midpoint trajectory.
struct SymbolSeries {
  Symbol symbol;
  std::vector<EventSeries> days;
  std::vector<MidpointTrajectory> trajectories;
};

/// Row-major N x N matrix; entries without samples are empty.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n) : n_(n), data_(n * n) {}

  std::size_t size() const noexcept { return n_; }
  std::optional<double>& operator()(std::size_t row, std::size_t col) { return data_[row * n_ + col]; }
  const std::optional<double>& operator()(std::size_t row, std::size_t col) const { return data_[row * n_ + col]; }

 private:
  std::size_t n_{0};
  std::vector<std::optional<double>> data_;
};

/// Rows: symbol i whose events are counted. Columns: symbol j whose price is
/// measured. Symbols in alphabetical order.
struct CrossResponseMatrix {
  std::int64_t tau{0};
  std::vector<Symbol> symbols;
  SquareMatrix values;
  /// values / max_{i != j} |values|; all zero when every off-diagonal is zero.
  SquareMatrix normalized;
};

/// Throws FewerThanTwoSymbols.
CrossResponseMatrix cross_matrix(std::span<const SymbolSeries> market, std::int64_t tau, SpreadChangeKind kind);
std::vector<CrossResponseMatrix> cross_matrices(std::span<const SymbolSeries> market,
                                                std::span<const std::int64_t> taus, SpreadChangeKind kind);

/// Divides by the largest absolute off-diagonal entry.
SquareMatrix normalize_off_diagonal(const SquareMatrix& values);

struct ActivePassive {
  /// active[j]: mean over i != j of R_ij (column mean).
  std::vector<std::optional<double>> active;
  /// passive[i]: mean over j != i of R_ij (row mean).
  std::vector<std::optional<double>> passive;
};

ActivePassive active_passive(const CrossResponseMatrix& matrix);

/// Mean of the off-diagonal entries of each matrix, one point per matrix.
/// Throws FewerThanTwoSymbols.
ResponseCurve market_response(std::span<const CrossResponseMatrix> matrices);

/// tau,row_symbol,col_symbol,R,rho
void write_matrix_header(std::ostream& out);
void write_matrix_rows(std::ostream& out, const CrossResponseMatrix& m);
/// tau,symbol,active,passive
void write_active_passive_header(std::ostream& out);
void write_active_passive_rows(std::ostream& out, const CrossResponseMatrix& m, const ActivePassive& ap);

}  // namespace lobresp::response
