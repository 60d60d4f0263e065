#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "sigprice/pbe.hpp"
#include "sigprice/report.hpp"

namespace sigprice {

/// Discretization used by the brute-force equilibrium search and the
/// direct pricing checks.
struct GridSpec {
  double rho_step = 1e-3;
  double mix_step = 1e-3;
  std::vector<double> price_grid;  // empty -> default grid for the params

  static GridSpec defaults_for(const MarketParams& params);
  void validate() const;
};

/// A strategy profile the grid search could not refute: no player found a
/// unilateral deviation worth more than epsilon.
struct EpsEquilibrium {
  double rho = 0.0;
  PricingPolicy policy;
  double epsilon = 0.0;  // max unilateral gain across both sides
};

/// Exhaustive search over manipulation probabilities and seller mixtures.
/// For each rho on the grid the seller's posterior is fixed by Bayes' rule,
/// her candidate plans are the ones within tolerance of the best reply per
/// signal, and mixtures over tied plans walk the mix grid.  Profiles
/// survive when the high buyers' manipulate-vs-honest gap also stays within
/// tolerance.  Tolerances scale with the grid (a Lipschitz bound times the
/// step) so coarse grids do not reject true equilibria.
std::vector<EpsEquilibrium> brute_force_pbe(const MarketParams& params,
                                            const GridSpec& grid);

/// From a list of accepted profiles, the one closest to a target (rho,
/// mixing weight).  Helper for comparing search output to closed forms.
const EpsEquilibrium* closest_profile(const std::vector<EpsEquilibrium>& found,
                                      double rho, double beta_on_mixed_signal);

/// Plays the two-buyer game n times under an equilibrium outcome:
/// preference pair from the prior, manipulation coin flips, seller plan
/// draw, random arrival order.  Deterministic for a fixed seed; chunked
/// substreams make the estimate independent of threading.
SimulationReport monte_carlo_play(const EquilibriumOutcome& outcome,
                                  const MarketParams& params, std::uint64_t n,
                                  std::uint64_t seed);

/// Checks that no price off {v_low, v_high} is ever a strict optimum at any
/// information set of the two-period game, across a sweep of beliefs.  The
/// supplied grid is augmented with 16 evenly spaced interior prices.
bool verify_binary_pricing(const MarketParams& params,
                           std::vector<double> price_grid);

/// Interaction utilities for the continuous-frequency game, split by
/// whether the pair shares a preference.  Must satisfy: same-preference
/// utility nonnegative, nondecreasing in both arguments, u(1,1)=1,
/// u(0,0)=0, and a fixed silence loss u(x,1)-u(x,0)=l at binary x;
/// cross-preference utility nonpositive and nonincreasing.
struct InteractionUtility {
  std::function<double(double, double)> same;
  std::function<double(double, double)> diff;
};

/// Searches symmetric (and pure asymmetric) high-pair strategies over a
/// frequency grid and confirms every surviving profile uses only the
/// extreme frequencies 0 and 1.  Rejects utilities that break the contract
/// above, naming the violated condition.
bool verify_frequency_polarization(const MarketParams& params,
                                   const std::vector<double>& freq_grid,
                                   const InteractionUtility& utility);

}  // namespace sigprice
