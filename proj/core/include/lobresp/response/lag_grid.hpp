#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace lobresp::response {

/// Integer lags round(10^(k / points_per_decade)) for k = 0, 1, ... up to
/// max_lag, deduplicated. With 25 points per decade every integer from 1 to
/// 10 appears, then the grid thins out logarithmically. The grid always ends
/// at max_lag.
std::vector<std::int64_t> log_lag_grid(std::int64_t max_lag, int points_per_decade = 25);

/// Parses "1,2,50,500". Throws InvalidConfig on bad or non-increasing input.
std::vector<std::int64_t> parse_lag_list(std::string_view text);

/// Throws EmptyGrid when empty and InvalidConfig when not strictly
/// increasing or negative.
void validate_grid(std::span<const std::int64_t> lags);

}  // namespace lobresp::response
