#pragma once

#include "sigprice/benchmarks.hpp"
#include "sigprice/pbe.hpp"

namespace sigprice {

/// Closed-form welfare quantities for one parameter point (uniform prior),
/// comparing no learning, undisclosed learning and strategic learning.
struct WelfareReport {
  Region region = Region::I;
  double revenue_no_learning = 0.0;
  double revenue_undisclosed = 0.0;
  double revenue_strategic = 0.0;
  double payoff_undisclosed = 0.0;
  double payoff_strategic = 0.0;
  double gain_strategic_vs_no = 0.0;   // (strategic - no) / no
  double loss_awareness = 0.0;         // (undisclosed - strategic) / undisclosed
  bool buyer_worse_off = false;
};

/// Seller's expected two-buyer revenue in the strategic-learning
/// equilibrium, region by region.
double strategic_revenue(const MarketParams& params);

enum class PayoffMechanism { UndisclosedLearning, StrategicLearning };

/// Average buyer payoff (over preference draws and arrival orders) under a
/// learning mechanism.  Unaware buyers keep 1/2 on average until the
/// preference gap closes enough for uniform low pricing; aware buyers earn
/// the region-specific value of the manipulation equilibrium.
double average_buyer_payoff(const MarketParams& params,
                            PayoffMechanism mechanism);

/// True when awareness of the seller's learning strictly lowers the average
/// buyer payoff (strict comparison at tolerance 1e-12).
bool buyer_worse_off(const MarketParams& params);

/// Seller's relative revenue loss from buyers becoming aware of the
/// learning practice; zero in regions I/II and at most 1/12 overall.
double loss_from_awareness(const MarketParams& params);

/// Relative revenue gain from attaching one already-known low-preference
/// buyer to the two-buyer market; always positive and at most 3/11.
double known_low_buyer_gain(const MarketParams& params);

WelfareReport welfare_report(const MarketParams& params);

}  // namespace sigprice
