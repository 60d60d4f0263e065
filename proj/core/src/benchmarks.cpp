#include "sigprice/benchmarks.hpp"

namespace sigprice {

const char* to_string(BenchmarkMechanism m) {
  switch (m) {
    case BenchmarkMechanism::NoLearning: return "no-learning";
    case BenchmarkMechanism::UndisclosedLearning: return "undisclosed-learning";
    case BenchmarkMechanism::UndisclosedWithKnown:
      return "undisclosed-with-known";
  }
  return "?";
}

namespace {

constexpr char kHonestRule[] =
    "same-preference pairs interact at frequency 1, cross-preference pairs "
    "at 0";

double no_learning_revenue(const MarketParams& params, int n) {
  // Uniform high price sells to half the buyers in expectation.
  return 2.0 * params.v_low <= params.v_high ? n * params.v_high / 2.0
                                             : n * params.v_low;
}

double undisclosed_revenue(const MarketParams& params, int n) {
  if (n * params.v_high <= (n + 1) * params.v_low) return n * params.v_low;
  return n * params.v_high / 2.0 + (n - 1) * params.v_low / 2.0;
}

}  // namespace

BenchmarkOutcome no_learning_spe(const MarketParams& params, int n_buyers) {
  params.validate();
  if (n_buyers < 1)
    throw std::invalid_argument("no_learning_spe: need at least one buyer");
  BenchmarkOutcome out;
  out.mechanism = BenchmarkMechanism::NoLearning;
  out.stage1_rule = kHonestRule;
  const PricingPlan plan = 2.0 * params.v_low <= params.v_high
                               ? PricingPlan::UniformHigh
                               : PricingPlan::UniformLow;
  out.pricing.on_signal_1 = PricingPolicy::pure(plan);
  out.pricing.on_signal_0 = PricingPolicy::pure(plan);
  out.expected_revenue = no_learning_revenue(params, n_buyers);
  out.gain_over_no_learning = 0.0;
  return out;
}

BenchmarkOutcome undisclosed_learning_spe(const MarketParams& params,
                                          int n_buyers) {
  params.validate();
  if (n_buyers < 2)
    throw std::invalid_argument(
        "undisclosed_learning_spe: need at least two buyers");
  BenchmarkOutcome out;
  out.mechanism = BenchmarkMechanism::UndisclosedLearning;
  out.stage1_rule = kHonestRule;
  if (n_buyers * params.v_high <= (n_buyers + 1) * params.v_low) {
    out.pricing.on_signal_1 = PricingPolicy::pure(PricingPlan::UniformLow);
    out.pricing.on_signal_0 = PricingPolicy::pure(PricingPlan::UniformLow);
  } else {
    // Probe at the high price, then match the revealed preference along
    // correlated edges (flip it across anti-correlated ones).
    out.pricing.on_signal_1 =
        PricingPolicy::pure(PricingPlan::HighThenPersonalizedMatch);
    out.pricing.on_signal_0 =
        PricingPolicy::pure(PricingPlan::HighThenPersonalizedFlip);
  }
  out.expected_revenue = undisclosed_revenue(params, n_buyers);
  out.gain_over_no_learning = revenue_gain_undisclosed(params, n_buyers);
  return out;
}

double revenue_gain_undisclosed(const MarketParams& params, int n_buyers) {
  params.validate();
  if (n_buyers < 2)
    throw std::invalid_argument(
        "revenue_gain_undisclosed: need at least two buyers");
  const double n = n_buyers;
  const double ratio = params.ratio();
  if (ratio >= n / (n + 1.0)) return 0.0;
  if (2.0 * params.v_low >= params.v_high)
    return params.v_high / (2.0 * params.v_low) - (n + 1.0) / (2.0 * n);
  return (n - 1.0) * params.v_low / (n * params.v_high);
}

BenchmarkOutcome known_buyer_undisclosed(const MarketParams& params,
                                         int n_unknown, int n_known) {
  params.validate();
  if (n_known < 1)
    throw std::invalid_argument(
        "known_buyer_undisclosed: need at least one known buyer");
  if (n_unknown < 1)
    throw std::invalid_argument(
        "known_buyer_undisclosed: need at least one unknown buyer");
  BenchmarkOutcome out;
  out.mechanism = BenchmarkMechanism::UndisclosedWithKnown;
  out.stage1_rule = kHonestRule;
  // Every preference is inferred through the known buyer, so each period
  // prices at the arriving buyer's value.
  out.pricing.on_signal_1 =
      PricingPolicy::pure(PricingPlan::HighThenPersonalizedMatch);
  out.pricing.on_signal_0 =
      PricingPolicy::pure(PricingPlan::HighThenPersonalizedFlip);
  out.expected_revenue = n_unknown * (params.v_low + params.v_high) / 2.0;
  const double no_learning = no_learning_revenue(params, n_unknown);
  const double undisclosed = undisclosed_revenue(params, n_unknown);
  out.gain_over_no_learning =
      (out.expected_revenue - no_learning) / no_learning;
  out.gain_over_undisclosed =
      (out.expected_revenue - undisclosed) / undisclosed;
  return out;
}

}  // namespace sigprice
