#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sigprice/model.hpp"

namespace sigprice {

/// Parameter regions of the strategic-learning equilibrium, ordered by how
/// aggressively high-preference buyers hide their mutual interactions.
///   I   similar preferences: uniform low pricing, no manipulation
///   II  small gap: personalized pricing, still no manipulation
///   III medium gap: buyers mix, seller prices personally on both signals
///   IV  large gap, high floor: seller mixes in a low uniform price on the
///       high signal
///   V   large gap, low floor: seller mixes in a high uniform price on the
///       low signal
enum class Region { I, II, III, IV, V };

const char* to_string(Region r);

/// Two-period pricing plans available to the seller.  Personalized plans
/// probe with the high price first and key the second price on the first
/// purchase: Match repeats what the first buyer revealed (used when the
/// signal says "same preferences"), Flip inverts it (signal says
/// "different preferences").
enum class PricingPlan {
  UniformLow,
  UniformHigh,
  HighThenPersonalizedMatch,
  HighThenPersonalizedFlip,
};

const char* to_string(PricingPlan p);

struct PlanWeight {
  PricingPlan plan;
  double weight;
};

/// A (possibly randomized) pricing rule per observed common-frequency
/// signal.  Weights on each signal sum to one; every plan prices only at
/// v_low or v_high.
struct PricingPolicy {
  std::vector<PlanWeight> on_signal_1;
  std::vector<PlanWeight> on_signal_0;

  static std::vector<PlanWeight> pure(PricingPlan p) { return {{p, 1.0}}; }
};

bool operator==(const PlanWeight& a, const PlanWeight& b);
bool operator==(const PricingPolicy& a, const PricingPolicy& b);

/// Prices charged by a plan: the first-period price and the second-period
/// price as a function of the first purchase decision.
double plan_first_price(PricingPlan p, const MarketParams& params);
double plan_second_price(PricingPlan p, bool first_bought,
                         const MarketParams& params);

struct EquilibriumOutcome {
  Region region = Region::I;
  double rho_star = 0.0;               // manipulation probability of high pairs
  std::optional<double> beta_star;     // seller's mixing weight, regions IV/V
  PricingPolicy policy;
  double belief_s = 1.0;               // Pr(signal 1 | both high) = (1-rho)^2
  double posterior_hh_given_1 = 0.5;
  double posterior_hh_given_0 = 0.0;
};

bool operator==(const EquilibriumOutcome& a, const EquilibriumOutcome& b);

/// Deterministic region classification with tie order I > II > III > IV > V
/// on shared boundaries (the closed-form outcomes coincide there in the
/// limit, so a fixed order just makes the label reproducible).
Region classify_region(double v_high, double v_low, double l);

/// Probability that a high-preference buyer goes silent toward his
/// high-preference friend.  Zero in regions I/II, strictly interior in
/// III-V.  Throws if the region does not match the parameters.
double manipulation_probability(Region region, const MarketParams& params);

/// Seller's mixing weight where the equilibrium randomizes: region IV
/// returns the weight on the low uniform price upon signal 1, region V the
/// weight on the high uniform price upon signal 0.  Absent elsewhere.
std::optional<double> seller_mixing(Region region, const MarketParams& params);

/// Bayes posteriors of "both buyers are high-preference" given the signal,
/// as a function of the manipulation probability.  Returns
/// {Pr(HH | signal 1), Pr(HH | signal 0)} under the uniform prior.
std::pair<double, double> posterior_beliefs(double rho);

/// Revenue-maximizing pricing per signal when the seller believes high
/// pairs show signal 1 with probability s (uniform prior).  Uniform low
/// wins on signal 1 at ratio >= 2s/(1+2s); on signal 0 the rule walks from
/// uniform low through the flip plan down to uniform high as the ratio
/// falls through (3-s)/(4-s) and (1-s)/(2-s).
PricingPolicy optimal_pricing_given_s(double s, const MarketParams& params);

/// Closed-form perfect Bayesian equilibrium of the strategic-learning game
/// under the uniform prior (alpha = 1/2).
EquilibriumOutcome solve_pbe(const MarketParams& params);

/// Equilibrium under a low-skewed prior alpha <= 1/2.  At alpha = 1/2 this
/// is exactly solve_pbe.  For alpha < 1/2 a new no-manipulation region
/// (labelled V) opens between the ratio bounds 2a^2/(3a^2-2a+1) and 2/3
/// where the seller posts the low uniform price on signal 1; the mixing
/// regions use the prior-adjusted indifference system and both carry label
/// IV.
EquilibriumOutcome solve_pbe_nonuniform(const MarketParams& params);

namespace detail {

/// Pair-type posterior behind a signal for an arbitrary prior: returns
/// Pr(HH | signal 1) and Pr(HH | signal 0); conditional on signal 0 the
/// complement is split evenly between the two mixed orderings.
std::pair<double, double> posterior_beliefs_alpha(double rho, double alpha);

/// Expected two-period revenue of a plan given the posterior over pair
/// types behind the observed signal.  p_hh, p_ll and p_mixed must sum to 1;
/// mixed mass is split evenly between arrival orders.
double plan_revenue(PricingPlan plan, double p_hh, double p_ll, double p_mixed,
                    const MarketParams& params);

/// Expected purchase surplus of one high-preference buyer in a
/// high-preference pair under a plan (random arrival order).
double plan_surplus_high_pair(PricingPlan plan, const MarketParams& params);

}  // namespace detail

}  // namespace sigprice
