#pragma once

#include <stdexcept>
#include <string>

namespace sigprice {

enum class Preference { Low, High };

/// Exogenous market parameters for the two-type buyer model.
///
/// Buyers value the product at either v_low or v_high, a fresh buyer is
/// high-preference with probability alpha, and l is the social loss a buyer
/// suffers when a same-preference friend stays silent.  c and r shape the
/// (negative) utility of interacting across preference types; they never
/// enter equilibrium computations because cross-type pairs stay silent in
/// every equilibrium, but they are kept for utility evaluation.
struct MarketParams {
  double v_low = 0.0;
  double v_high = 0.0;
  double alpha = 0.5;
  double l = 0.5;
  double c = 1.0;
  double r = 0.5;

  MarketParams() = default;
  MarketParams(double vl, double vh, double loss = 0.5, double prior = 0.5,
               double cost = 1.0, double relief = 0.5)
      : v_low(vl), v_high(vh), alpha(prior), l(loss), c(cost), r(relief) {
    validate();
  }

  void validate() const {
    if (!(v_low > 0.0) || !(v_low < v_high))
      throw std::invalid_argument("MarketParams: need 0 < v_low < v_high");
    if (!(alpha > 0.0) || !(alpha <= 0.5))
      throw std::invalid_argument("MarketParams: need 0 < alpha <= 1/2");
    if (!(l > 0.0) || !(l < 1.0))
      throw std::invalid_argument("MarketParams: need l in (0,1)");
    if (!(r > 0.0) || !(r < c))
      throw std::invalid_argument("MarketParams: need 0 < r < c");
  }

  double value_of(Preference p) const {
    return p == Preference::High ? v_high : v_low;
  }
  double ratio() const { return v_low / v_high; }
  double diff() const { return v_high - v_low; }
};

/// Directed social interaction frequencies on one buyer pair. x_ij is how
/// often buyer i reaches out to j; x_ji the reverse.  Binary in the base
/// model, fractional only in the continuous-frequency extension.
struct InteractionPair {
  double x_ij = 0.0;
  double x_ji = 0.0;

  bool binary() const {
    return (x_ij == 0.0 || x_ij == 1.0) && (x_ji == 0.0 || x_ji == 1.0);
  }
  bool in_unit_range() const {
    return x_ij >= 0.0 && x_ij <= 1.0 && x_ji >= 0.0 && x_ji <= 1.0;
  }
};

/// One period's pricing outcome: the posted price and whether the arriving
/// buyer took it.  bought must equal (buyer value >= price).
struct PurchaseRecord {
  int period = 1;
  double price = 0.0;
  bool bought = false;
};

/// Buyer i's stage-one utility from interacting with buyer j.  Same-type
/// pairs enjoy interaction (scaled so mutual chat is worth 1), cross-type
/// pairs suffer from it.  Rejects fractional frequencies; the continuous
/// extension has its own utility family.
double social_utility(Preference v_i, Preference v_j, const InteractionPair& x,
                      const MarketParams& params);

/// The signal the seller observes on an edge: interaction only counts when
/// both sides engage, so the common frequency is the minimum of the two
/// directed frequencies.
inline double common_frequency(const InteractionPair& x) {
  return x.x_ij < x.x_ji ? x.x_ij : x.x_ji;
}

/// A buyer takes the posted price whenever his value covers it (ties buy).
inline bool purchase_decision(double value, double price) {
  return value >= price;
}

/// Final payoff: purchase surplus (zero if priced out) plus stage-one
/// social utility.
inline double buyer_final_payoff(double value, double price, double u_social) {
  double surplus = value - price;
  return (surplus > 0.0 ? surplus : 0.0) + u_social;
}

}  // namespace sigprice
