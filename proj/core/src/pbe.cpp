#include "sigprice/pbe.hpp"

#include <cmath>

namespace sigprice {

const char* to_string(Region r) {
  switch (r) {
    case Region::I: return "I";
    case Region::II: return "II";
    case Region::III: return "III";
    case Region::IV: return "IV";
    case Region::V: return "V";
  }
  return "?";
}

const char* to_string(PricingPlan p) {
  switch (p) {
    case PricingPlan::UniformLow: return "uniform-low";
    case PricingPlan::UniformHigh: return "uniform-high";
    case PricingPlan::HighThenPersonalizedMatch: return "high-then-match";
    case PricingPlan::HighThenPersonalizedFlip: return "high-then-flip";
  }
  return "?";
}

bool operator==(const PlanWeight& a, const PlanWeight& b) {
  return a.plan == b.plan && a.weight == b.weight;
}

bool operator==(const PricingPolicy& a, const PricingPolicy& b) {
  return a.on_signal_1 == b.on_signal_1 && a.on_signal_0 == b.on_signal_0;
}

bool operator==(const EquilibriumOutcome& a, const EquilibriumOutcome& b) {
  return a.region == b.region && a.rho_star == b.rho_star &&
         a.beta_star == b.beta_star && a.policy == b.policy &&
         a.belief_s == b.belief_s &&
         a.posterior_hh_given_1 == b.posterior_hh_given_1 &&
         a.posterior_hh_given_0 == b.posterior_hh_given_0;
}

double plan_first_price(PricingPlan p, const MarketParams& params) {
  return p == PricingPlan::UniformLow ? params.v_low : params.v_high;
}

double plan_second_price(PricingPlan p, bool first_bought,
                         const MarketParams& params) {
  switch (p) {
    case PricingPlan::UniformLow: return params.v_low;
    case PricingPlan::UniformHigh: return params.v_high;
    case PricingPlan::HighThenPersonalizedMatch:
      return first_bought ? params.v_high : params.v_low;
    case PricingPlan::HighThenPersonalizedFlip:
      return first_bought ? params.v_low : params.v_high;
  }
  return params.v_high;
}

Region classify_region(double v_high, double v_low, double l) {
  if (!(v_low > 0.0) || !(v_low < v_high) || !(l > 0.0) || !(l < 1.0))
    throw std::invalid_argument("classify_region: parameter domain violation");
  const double diff = v_high - v_low;
  const double q = 1.0 - l;
  if (3.0 * v_low >= 2.0 * v_high) return Region::I;
  if (diff <= 2.0 * q) return Region::II;
  const bool cp = v_low * diff >= 8.0 * q * q;
  const bool bp = diff * (v_high - 2.0 * v_low) >= 4.0 * q * q;
  if (!cp && !bp) return Region::III;
  if (5.0 * v_low >= 2.0 * v_high && cp) return Region::IV;
  return Region::V;
}

double manipulation_probability(Region region, const MarketParams& params) {
  params.validate();
  if (region != classify_region(params.v_high, params.v_low, params.l))
    throw std::invalid_argument(
        "manipulation_probability: region does not match the parameters");
  const double diff = params.diff();
  switch (region) {
    case Region::I:
    case Region::II:
      return 0.0;
    case Region::III:
      return 1.0 - 2.0 * (1.0 - params.l) / diff;
    case Region::IV:
      return 1.0 - std::sqrt(params.v_low / (2.0 * diff));
    case Region::V:
      return 1.0 - std::sqrt((params.v_high - 2.0 * params.v_low) / diff);
  }
  return 0.0;
}

std::optional<double> seller_mixing(Region region, const MarketParams& params) {
  params.validate();
  const double diff = params.diff();
  const double q = 1.0 - params.l;
  switch (region) {
    case Region::IV:
      // Weight on the low uniform price upon signal 1.
      return 0.5 - std::sqrt(2.0) * q / std::sqrt(params.v_low * diff);
    case Region::V:
      // Weight on the high uniform price upon signal 0.
      return 1.0 - 2.0 * q /
                       std::sqrt(diff * (params.v_high - 2.0 * params.v_low));
    default:
      return std::nullopt;
  }
}

std::pair<double, double> posterior_beliefs(double rho) {
  if (rho < 0.0 || rho > 1.0)
    throw std::invalid_argument("posterior_beliefs: rho outside [0,1]");
  const double s = (1.0 - rho) * (1.0 - rho);
  return {s / (s + 1.0), (1.0 - s) / (3.0 - s)};
}

namespace detail {

std::pair<double, double> posterior_beliefs_alpha(double rho, double alpha) {
  const double s = (1.0 - rho) * (1.0 - rho);
  const double a2 = alpha * alpha;
  const double b2 = (1.0 - alpha) * (1.0 - alpha);
  const double hh1 = a2 * s / (a2 * s + b2);
  const double denom0 = alpha * (1.0 - s) + 2.0 * (1.0 - alpha);
  const double hh0 = denom0 > 0.0 ? alpha * (1.0 - s) / denom0 : 0.0;
  return {hh1, hh0};
}

double plan_revenue(PricingPlan plan, double p_hh, double p_ll, double p_mixed,
                    const MarketParams& params) {
  const double vh = params.v_high;
  const double vl = params.v_low;
  auto pair_revenue = [&](double v1, double v2) {
    const double p1 = plan_first_price(plan, params);
    const bool a1 = purchase_decision(v1, p1);
    const double p2 = plan_second_price(plan, a1, params);
    const bool a2 = purchase_decision(v2, p2);
    return (a1 ? p1 : 0.0) + (a2 ? p2 : 0.0);
  };
  return p_hh * pair_revenue(vh, vh) + p_ll * pair_revenue(vl, vl) +
         0.5 * p_mixed * (pair_revenue(vh, vl) + pair_revenue(vl, vh));
}

double plan_surplus_high_pair(PricingPlan plan, const MarketParams& params) {
  const double vh = params.v_high;
  auto position_surplus = [&](bool first) {
    const double p1 = plan_first_price(plan, params);
    if (first) return vh >= p1 ? vh - p1 : 0.0;
    const bool a1 = purchase_decision(vh, p1);
    const double p2 = plan_second_price(plan, a1, params);
    return vh >= p2 ? vh - p2 : 0.0;
  };
  return 0.5 * (position_surplus(true) + position_surplus(false));
}

}  // namespace detail

PricingPolicy optimal_pricing_given_s(double s, const MarketParams& params) {
  params.validate();
  if (s < 0.0 || s > 1.0)
    throw std::invalid_argument("optimal_pricing_given_s: s outside [0,1]");
  const double ratio = params.ratio();
  PricingPolicy policy;
  policy.on_signal_1 =
      ratio >= 2.0 * s / (1.0 + 2.0 * s)
          ? PricingPolicy::pure(PricingPlan::UniformLow)
          : PricingPolicy::pure(PricingPlan::HighThenPersonalizedMatch);
  if (ratio >= (3.0 - s) / (4.0 - s)) {
    policy.on_signal_0 = PricingPolicy::pure(PricingPlan::UniformLow);
  } else if (ratio >= (1.0 - s) / (2.0 - s)) {
    policy.on_signal_0 =
        PricingPolicy::pure(PricingPlan::HighThenPersonalizedFlip);
  } else {
    policy.on_signal_0 = PricingPolicy::pure(PricingPlan::UniformHigh);
  }
  return policy;
}

namespace {

EquilibriumOutcome assemble(Region region, double rho,
                            std::optional<double> beta, PricingPolicy policy,
                            double alpha) {
  EquilibriumOutcome out;
  out.region = region;
  out.rho_star = rho;
  out.beta_star = beta;
  out.policy = std::move(policy);
  out.belief_s = (1.0 - rho) * (1.0 - rho);
  auto [hh1, hh0] = detail::posterior_beliefs_alpha(rho, alpha);
  out.posterior_hh_given_1 = hh1;
  out.posterior_hh_given_0 = hh0;
  return out;
}

PricingPolicy personalized_both_signals() {
  PricingPolicy p;
  p.on_signal_1 = PricingPolicy::pure(PricingPlan::HighThenPersonalizedMatch);
  p.on_signal_0 = PricingPolicy::pure(PricingPlan::HighThenPersonalizedFlip);
  return p;
}

}  // namespace

EquilibriumOutcome solve_pbe(const MarketParams& params) {
  params.validate();
  if (params.alpha != 0.5)
    throw std::invalid_argument("solve_pbe: requires the uniform prior");
  const Region region = classify_region(params.v_high, params.v_low, params.l);
  const double rho = manipulation_probability(region, params);
  switch (region) {
    case Region::I: {
      PricingPolicy p;
      p.on_signal_1 = PricingPolicy::pure(PricingPlan::UniformLow);
      p.on_signal_0 = PricingPolicy::pure(PricingPlan::UniformLow);
      return assemble(region, 0.0, std::nullopt, std::move(p), params.alpha);
    }
    case Region::II:
    case Region::III:
      return assemble(region, rho, std::nullopt, personalized_both_signals(),
                      params.alpha);
    case Region::IV: {
      const double beta = *seller_mixing(region, params);
      PricingPolicy p;
      p.on_signal_1 = {{PricingPlan::UniformLow, beta},
                       {PricingPlan::HighThenPersonalizedMatch, 1.0 - beta}};
      p.on_signal_0 =
          PricingPolicy::pure(PricingPlan::HighThenPersonalizedFlip);
      return assemble(region, rho, beta, std::move(p), params.alpha);
    }
    case Region::V: {
      const double beta = *seller_mixing(region, params);
      PricingPolicy p;
      p.on_signal_1 =
          PricingPolicy::pure(PricingPlan::HighThenPersonalizedMatch);
      p.on_signal_0 = {{PricingPlan::UniformHigh, beta},
                       {PricingPlan::HighThenPersonalizedFlip, 1.0 - beta}};
      return assemble(region, rho, beta, std::move(p), params.alpha);
    }
  }
  throw std::logic_error("solve_pbe: unreachable");
}

EquilibriumOutcome solve_pbe_nonuniform(const MarketParams& params) {
  params.validate();
  if (params.alpha > 0.5)
    throw std::invalid_argument(
        "solve_pbe_nonuniform: priors above 1/2 are out of modeled scope");
  if (params.alpha == 0.5) return solve_pbe(params);

  const double a = params.alpha;
  const double vh = params.v_high;
  const double vl = params.v_low;
  const double diff = params.diff();
  const double q = 1.0 - params.l;
  const double ratio = params.ratio();
  // Ratio below which high pairs can still be tempted to manipulate; above
  // it the seller prefers the low uniform price on signal 1 even under
  // honest signaling, which kills the manipulation motive.
  const double honest_low_ratio = 2.0 * a * a / (3.0 * a * a - 2.0 * a + 1.0);
  // Split between the two seller-mixing cases (signal-1 mixing vs signal-0
  // mixing); generalizes the 2/5 line of the uniform prior.
  const double mixing_split = 2.0 * a * a / (1.0 + a * a);

  if (3.0 * vl >= 2.0 * vh) {
    PricingPolicy p;
    p.on_signal_1 = PricingPolicy::pure(PricingPlan::UniformLow);
    p.on_signal_0 = PricingPolicy::pure(PricingPlan::UniformLow);
    return assemble(Region::I, 0.0, std::nullopt, std::move(p), a);
  }
  if (ratio > honest_low_ratio) {
    // New no-manipulation region: low uniform price on signal 1, probe and
    // personalize on signal 0.
    PricingPolicy p;
    p.on_signal_1 = PricingPolicy::pure(PricingPlan::UniformLow);
    p.on_signal_0 = PricingPolicy::pure(PricingPlan::HighThenPersonalizedFlip);
    return assemble(Region::V, 0.0, std::nullopt, std::move(p), a);
  }
  if (diff <= 2.0 * q)
    return assemble(Region::II, 0.0, std::nullopt, personalized_both_signals(),
                    a);

  const double u = (1.0 - a) / a;
  const bool cp = vl * diff >= 8.0 * q * q / (u * u);
  const bool bp = diff * (vh - vl / a) >= 4.0 * q * q;
  if (!cp && !bp) {
    const double rho = 1.0 - 2.0 * q / diff;
    return assemble(Region::III, rho, std::nullopt,
                    personalized_both_signals(), a);
  }
  if (ratio >= mixing_split) {
    // Seller mixes the low uniform price into signal 1.
    const double rho = 1.0 - u * std::sqrt(vl / (2.0 * diff));
    const double beta = 0.5 - q / ((1.0 - rho) * diff);
    PricingPolicy p;
    p.on_signal_1 = {{PricingPlan::UniformLow, beta},
                     {PricingPlan::HighThenPersonalizedMatch, 1.0 - beta}};
    p.on_signal_0 = PricingPolicy::pure(PricingPlan::HighThenPersonalizedFlip);
    return assemble(Region::IV, rho, beta, std::move(p), a);
  }
  // Seller mixes the high uniform price into signal 0.
  const double s = (a * vh - vl) / (a * diff);
  const double rho = 1.0 - std::sqrt(s);
  const double beta_personalized = 2.0 * q / (std::sqrt(s) * diff);
  const double beta = 1.0 - beta_personalized;
  PricingPolicy p;
  p.on_signal_1 = PricingPolicy::pure(PricingPlan::HighThenPersonalizedMatch);
  p.on_signal_0 = {{PricingPlan::UniformHigh, beta},
                   {PricingPlan::HighThenPersonalizedFlip, 1.0 - beta}};
  return assemble(Region::IV, rho, beta, std::move(p), a);
}

}  // namespace sigprice
