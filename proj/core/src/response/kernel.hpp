#pragma once

#include <cmath>
#include <span>

#include "lobresp/response/response.hpp"

namespace lobresp::response::detail {

/// Compensated (Neumaier) summation.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + compensation_; }

 private:
  double sum_{0.0};
  double compensation_{0.0};
};

ResponseCurve empty_curve(std::span<const std::int64_t> lags);

/// Shared physical-time accumulation behind the self, all-events and cross
/// responses. Does not throw NoEvents.
ResponseCurve physical_response(std::span<const EventSeries> days, std::span<const MidpointTrajectory> trajectories,
                                std::span<const std::int64_t> lag_seconds);

/// Throws NoEvents unless some day has an event inside its trajectory's session.
void require_events(std::span<const EventSeries> days, std::span<const MidpointTrajectory> trajectories);

}  // namespace lobresp::response::detail
