#include "sigprice/welfare.hpp"

#include <cmath>

namespace sigprice {

namespace {

void require_uniform_prior(const MarketParams& params, const char* who) {
  params.validate();
  if (params.alpha != 0.5)
    throw std::invalid_argument(std::string(who) +
                                ": requires the uniform prior");
}

double undisclosed_revenue_two(const MarketParams& params) {
  return 3.0 * params.v_low < 2.0 * params.v_high
             ? params.v_high + params.v_low / 2.0
             : 2.0 * params.v_low;
}

}  // namespace

double strategic_revenue(const MarketParams& params) {
  require_uniform_prior(params, "strategic_revenue");
  const double vh = params.v_high;
  const double vl = params.v_low;
  const double q = 1.0 - params.l;
  switch (classify_region(vh, vl, params.l)) {
    case Region::I:
      return 2.0 * vl;
    case Region::II:
      return vh + vl / 2.0;
    case Region::III:
      return 0.75 * vh + 0.75 * vl + q * q / (vh - vl);
    case Region::IV:
      return 0.75 * vh + 0.875 * vl;
    case Region::V:
      return vh + 0.25 * vl;
  }
  throw std::logic_error("strategic_revenue: unreachable");
}

static double strategic_buyer_payoff(const MarketParams& params) {
  const double vh = params.v_high;
  const double vl = params.v_low;
  const double diff = vh - vl;
  const double l = params.l;
  switch (classify_region(vh, vl, params.l)) {
    case Region::I:
      return (diff + 1.0) / 2.0;
    case Region::II:
      return 0.5;
    case Region::III:
      return l * (1.0 - l) / (2.0 * diff) + diff / 8.0 + 0.25;
    case Region::IV:
      return l / 4.0 * std::sqrt(vl / (2.0 * diff)) + diff / 8.0 + 0.25;
    case Region::V: {
      const double z = std::sqrt((vh - 2.0 * vl) / diff);
      return (1.0 - l) / (4.0 * z) + l * z / 4.0 + 0.25;
    }
  }
  throw std::logic_error("strategic_buyer_payoff: unreachable");
}

double average_buyer_payoff(const MarketParams& params,
                            PayoffMechanism mechanism) {
  require_uniform_prior(params, "average_buyer_payoff");
  if (mechanism == PayoffMechanism::UndisclosedLearning)
    return 3.0 * params.v_low <= 2.0 * params.v_high
               ? 0.5
               : (params.diff() + 1.0) / 2.0;
  return strategic_buyer_payoff(params);
}

bool buyer_worse_off(const MarketParams& params) {
  require_uniform_prior(params, "buyer_worse_off");
  const double unaware =
      average_buyer_payoff(params, PayoffMechanism::UndisclosedLearning);
  const double aware = strategic_buyer_payoff(params);
  return unaware - aware > 1e-12;
}

double loss_from_awareness(const MarketParams& params) {
  require_uniform_prior(params, "loss_from_awareness");
  const double vh = params.v_high;
  const double vl = params.v_low;
  const double diff = vh - vl;
  const double q = 1.0 - params.l;
  switch (classify_region(vh, vl, params.l)) {
    case Region::I:
    case Region::II:
      return 0.0;
    case Region::III:
      return (diff * diff - 4.0 * q * q) / (diff * (4.0 * vh + 2.0 * vl));
    case Region::IV:
      return (2.0 * vh - 3.0 * vl) / (8.0 * vh + 4.0 * vl);
    case Region::V:
      return vl / (4.0 * vh + 2.0 * vl);
  }
  throw std::logic_error("loss_from_awareness: unreachable");
}

double known_low_buyer_gain(const MarketParams& params) {
  require_uniform_prior(params, "known_low_buyer_gain");
  const double vh = params.v_high;
  const double vl = params.v_low;
  const double q = 1.0 - params.l;
  switch (classify_region(vh, vl, params.l)) {
    case Region::I:
      return (vh - vl) / (2.0 * vl);
    case Region::II:
      return vl / (2.0 * vh + vl);
    case Region::III: {
      const double gap2 = vh * vh - vl * vl;
      return (gap2 - 4.0 * q * q) / (3.0 * gap2 + 4.0 * q * q);
    }
    case Region::IV:
      return (2.0 * vh + vl) / (6.0 * vh + 7.0 * vl);
    case Region::V:
      return 3.0 * vl / (4.0 * vh + vl);
  }
  throw std::logic_error("known_low_buyer_gain: unreachable");
}

WelfareReport welfare_report(const MarketParams& params) {
  require_uniform_prior(params, "welfare_report");
  WelfareReport rep;
  rep.region = classify_region(params.v_high, params.v_low, params.l);
  rep.revenue_no_learning = no_learning_spe(params, 2).expected_revenue;
  rep.revenue_undisclosed = undisclosed_revenue_two(params);
  rep.revenue_strategic = strategic_revenue(params);
  rep.payoff_undisclosed =
      average_buyer_payoff(params, PayoffMechanism::UndisclosedLearning);
  rep.payoff_strategic = strategic_buyer_payoff(params);
  rep.gain_strategic_vs_no =
      (rep.revenue_strategic - rep.revenue_no_learning) /
      rep.revenue_no_learning;
  rep.loss_awareness = loss_from_awareness(params);
  rep.buyer_worse_off = buyer_worse_off(params);
  return rep;
}

}  // namespace sigprice
