#include "sigprice/model.hpp"

namespace sigprice {

double social_utility(Preference v_i, Preference v_j, const InteractionPair& x,
                      const MarketParams& params) {
  params.validate();
  if (!x.binary())
    throw std::invalid_argument(
        "social_utility: frequencies must be binary in the discrete model");
  if (v_i == v_j) {
    // Mutual chat is worth 1; a silent partner costs the talker l and the
    // silent side keeps only l of the unit value.
    return (1.0 - params.l) * x.x_ij + params.l * x.x_ji;
  }
  // Cross-type interaction is unpleasant: own outreach costs c-r, incoming
  // chatter costs r.
  return -(params.c - params.r) * x.x_ij - params.r * x.x_ji;
}

}  // namespace sigprice
