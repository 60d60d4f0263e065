#pragma once

#include <cmath>
#include <cstdint>
#include <string>

namespace sigprice {

/// Monte-Carlo estimate of revenue and buyer payoffs for one mechanism.
/// Per-class payoff estimates split buyers by preference (low/high value,
/// or low-end/high-end class in the continuous model).
struct SimulationReport {
  std::string mechanism;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  double mean_revenue = 0.0;
  double stderr_revenue = 0.0;
  double mean_payoff = 0.0;
  double stderr_payoff = 0.0;
  double mean_payoff_low = 0.0;
  double stderr_payoff_low = 0.0;
  double mean_payoff_high = 0.0;
  double stderr_payoff_high = 0.0;
};

/// Streaming sums for a mean/standard-error estimate.  Merging is plain
/// addition, so chunked parallel accumulation is order-independent as long
/// as chunks are combined in a fixed order.
struct Accumulator {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::uint64_t n = 0;

  void add(double x) {
    sum += x;
    sum_sq += x * x;
    ++n;
  }
  void merge(const Accumulator& o) {
    sum += o.sum;
    sum_sq += o.sum_sq;
    n += o.n;
  }
  double mean() const { return n ? sum / static_cast<double>(n) : 0.0; }
  double stderr_mean() const {
    if (n < 2) return 0.0;
    const double m = mean();
    double var = (sum_sq - static_cast<double>(n) * m * m) /
                 static_cast<double>(n - 1);
    if (var < 0.0) var = 0.0;
    return std::sqrt(var / static_cast<double>(n));
  }
};

}  // namespace sigprice
