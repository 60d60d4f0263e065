#pragma once

#include <string>

#include "sigprice/pbe.hpp"

namespace sigprice {

enum class BenchmarkMechanism {
  NoLearning,
  UndisclosedLearning,
  UndisclosedWithKnown,
};

const char* to_string(BenchmarkMechanism m);

/// Subgame-perfect outcome of a benchmark mechanism where buyers signal
/// honestly.  expected_revenue is taken over the preference prior and the
/// random arrival order; the gain is relative to no learning.
struct BenchmarkOutcome {
  BenchmarkMechanism mechanism = BenchmarkMechanism::NoLearning;
  std::string stage1_rule;
  PricingPolicy pricing;
  double expected_revenue = 0.0;
  double gain_over_no_learning = 0.0;
  // Extra edge of the known-buyer variant over plain undisclosed learning;
  // zero for the other mechanisms.
  double gain_over_undisclosed = 0.0;
};

/// Seller without access to interaction data posts one uniform price for
/// everyone: the high price when it beats selling to all (2 v_low <=
/// v_high, ties to the high price), the low price otherwise.
BenchmarkOutcome no_learning_spe(const MarketParams& params, int n_buyers = 2);

/// Seller reads honest interaction data unnoticed.  With n connected
/// unknown buyers she probes the first arrival at the high price and then
/// personalizes every later price, unless the low value is already within
/// n/(n+1) of the high one, in which case she posts the low price
/// throughout.
BenchmarkOutcome undisclosed_learning_spe(const MarketParams& params,
                                          int n_buyers);

/// Relative revenue gain of undisclosed learning over no learning,
/// piecewise in v_low/v_high; zero from ratio n/(n+1) upward and maximal
/// (n-1)/(2n) at ratio 1/2.
double revenue_gain_undisclosed(const MarketParams& params, int n_buyers);

/// Undisclosed learning when at least one already-known buyer is connected
/// to the unknown component: the seller infers every preference upfront and
/// personalizes every period, earning n(v_low+v_high)/2 in expectation.
BenchmarkOutcome known_buyer_undisclosed(const MarketParams& params,
                                         int n_unknown, int n_known = 1);

}  // namespace sigprice
