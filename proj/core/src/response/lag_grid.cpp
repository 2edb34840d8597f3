#include "lobresp/response/lag_grid.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "lobresp/error.hpp"

namespace lobresp::response {

std::vector<std::int64_t> log_lag_grid(std::int64_t max_lag, int points_per_decade) {
  if (max_lag < 1 || points_per_decade < 1) {
    throw Error(ErrorCode::InvalidConfig, "lag grid needs max_lag >= 1 and points_per_decade >= 1");
  }
  std::vector<std::int64_t> lags;
  for (int k = 0;; ++k) {
    const double x = std::pow(10.0, static_cast<double>(k) / points_per_decade);
    const auto lag = static_cast<std::int64_t>(std::llround(x));
    if (lag > max_lag) break;
    if (lags.empty() || lag > lags.back()) lags.push_back(lag);
  }
  if (lags.back() != max_lag) lags.push_back(max_lag);
  return lags;
}

std::vector<std::int64_t> parse_lag_list(std::string_view text) {
  std::vector<std::int64_t> lags;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto item = text.substr(0, comma);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
      throw Error(ErrorCode::InvalidConfig, "bad lag '" + std::string(item) + "'");
    }
    lags.push_back(v);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  validate_grid(lags);
  return lags;
}

void validate_grid(std::span<const std::int64_t> lags) {
  if (lags.empty()) throw Error(ErrorCode::EmptyGrid, "lag grid is empty");
  for (std::size_t i = 0; i < lags.size(); ++i) {
    if (lags[i] < 0) throw Error(ErrorCode::InvalidConfig, "negative lag");
    if (i > 0 && lags[i] <= lags[i - 1]) throw Error(ErrorCode::InvalidConfig, "lag grid must be strictly increasing");
  }
}

}  // namespace lobresp::response
