#include "sigprice/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "sigprice/rng.hpp"

namespace sigprice {

namespace {

constexpr PricingPlan kAllPlans[] = {
    PricingPlan::UniformLow, PricingPlan::UniformHigh,
    PricingPlan::HighThenPersonalizedMatch,
    PricingPlan::HighThenPersonalizedFlip};

struct SignalPosterior {
  double hh = 0.0;
  double ll = 0.0;
  double mixed = 0.0;
};

// Pair-type posteriors behind each signal for a given manipulation level.
std::pair<SignalPosterior, SignalPosterior> signal_posteriors(
    double rho, const MarketParams& params) {
  auto [hh1, hh0] = detail::posterior_beliefs_alpha(rho, params.alpha);
  SignalPosterior on1{hh1, 1.0 - hh1, 0.0};
  SignalPosterior on0{hh0, 0.0, 1.0 - hh0};
  return {on1, on0};
}

double mixture_revenue(const std::vector<PlanWeight>& mix,
                       const SignalPosterior& post,
                       const MarketParams& params) {
  double rev = 0.0;
  for (const auto& pw : mix)
    rev += pw.weight *
           detail::plan_revenue(pw.plan, post.hh, post.ll, post.mixed, params);
  return rev;
}

double mixture_surplus_high(const std::vector<PlanWeight>& mix,
                            const MarketParams& params) {
  double s = 0.0;
  for (const auto& pw : mix)
    s += pw.weight * detail::plan_surplus_high_pair(pw.plan, params);
  return s;
}

// Manipulate-minus-honest payoff gap of one high-preference buyer whose
// high-preference partner manipulates with probability rho, given the
// expected purchase surplus behind each signal.
double buyer_gap(double rho, double l, double surplus1, double surplus0) {
  const double honest =
      (1.0 - rho) * (1.0 + surplus1) + rho * (1.0 - l + surplus0);
  const double manip = (1.0 - rho) * (l + surplus0) + rho * surplus0;
  return manip - honest;
}

double buyer_deviation_gain(double rho, double gap) {
  if (rho <= 0.0) return std::max(0.0, gap);
  if (rho >= 1.0) return std::max(0.0, -gap);
  return std::fabs(gap);
}

// Candidate seller strategies on one signal: pure near-optimal plans plus
// mixtures over every near-optimal pair, walking the mix grid.
std::vector<std::vector<PlanWeight>> signal_candidates(
    const SignalPosterior& post, const MarketParams& params, double eps,
    double mix_step, double* best_out) {
  double rev[4];
  double best = -1.0;
  for (int i = 0; i < 4; ++i) {
    rev[i] = detail::plan_revenue(kAllPlans[i], post.hh, post.ll, post.mixed,
                                  params);
    best = std::max(best, rev[i]);
  }
  *best_out = best;
  std::vector<PricingPlan> tied;
  for (int i = 0; i < 4; ++i)
    if (rev[i] >= best - eps) tied.push_back(kAllPlans[i]);
  std::vector<std::vector<PlanWeight>> out;
  for (PricingPlan p : tied) out.push_back(PricingPolicy::pure(p));
  for (std::size_t i = 0; i + 1 < tied.size(); ++i)
    for (std::size_t j = i + 1; j < tied.size(); ++j)
      for (double w = mix_step; w < 1.0 - mix_step / 2.0; w += mix_step)
        out.push_back({{tied[i], w}, {tied[j], 1.0 - w}});
  return out;
}

}  // namespace

GridSpec GridSpec::defaults_for(const MarketParams& params) {
  GridSpec g;
  g.price_grid = {0.0,
                  params.v_low / 2.0,
                  params.v_low,
                  (params.v_low + params.v_high) / 2.0,
                  params.v_high,
                  params.v_high + 1e-6 * params.v_high};
  return g;
}

void GridSpec::validate() const {
  if (!(rho_step > 0.0) || !(mix_step > 0.0))
    throw std::invalid_argument("GridSpec: steps must be positive");
  if (price_grid.empty())
    throw std::invalid_argument("GridSpec: empty price grid");
  if (!std::is_sorted(price_grid.begin(), price_grid.end()))
    throw std::invalid_argument("GridSpec: price grid must be sorted");
}

std::vector<EpsEquilibrium> brute_force_pbe(const MarketParams& params,
                                            const GridSpec& grid_in) {
  params.validate();
  const GridSpec& grid = grid_in;
  grid.validate();

  // Grid-induced slack: payoffs move at most this fast per grid step.
  const double lip_buyer = 1.0 + params.v_high;
  const double lip_seller = 4.0 * params.v_high;
  const double eps_buyer = std::max({lip_buyer * grid.rho_step,
                                     lip_buyer * grid.mix_step,
                                     1e-6 * params.v_high});
  const double eps_seller = std::max({lip_seller * grid.rho_step,
                                      lip_seller * grid.mix_step,
                                      1e-6 * params.v_high});

  std::vector<EpsEquilibrium> found;
  const long n_rho = std::lround(1.0 / grid.rho_step);
  for (long k = 0; k <= n_rho; ++k) {
    const double rho = std::min(1.0, k * grid.rho_step);
    auto [post1, post0] = signal_posteriors(rho, params);
    double best1 = 0.0, best0 = 0.0;
    auto cands1 =
        signal_candidates(post1, params, eps_seller, grid.mix_step, &best1);
    auto cands0 =
        signal_candidates(post0, params, eps_seller, grid.mix_step, &best0);
    // Mixing on both signals at once never sustains an equilibrium here;
    // skip those combinations to keep the scan near-linear.
    for (const auto& c1 : cands1) {
      const bool mix1 = c1.size() > 1;
      const double s1 = mixture_surplus_high(c1, params);
      for (const auto& c0 : cands0) {
        if (mix1 && c0.size() > 1) continue;
        const double s0 = mixture_surplus_high(c0, params);
        const double gap = buyer_gap(rho, params.l, s1, s0);
        const double buyer_gain = buyer_deviation_gain(rho, gap);
        if (buyer_gain > eps_buyer) continue;
        const double seller_gain =
            std::max(best1 - mixture_revenue(c1, post1, params),
                     best0 - mixture_revenue(c0, post0, params));
        EpsEquilibrium eq;
        eq.rho = rho;
        eq.policy.on_signal_1 = c1;
        eq.policy.on_signal_0 = c0;
        eq.epsilon = std::max(buyer_gain, seller_gain);
        found.push_back(std::move(eq));
      }
    }
  }
  return found;
}

namespace {

double policy_weight(const std::vector<PlanWeight>& mix, PricingPlan plan) {
  for (const auto& pw : mix)
    if (pw.plan == plan) return pw.weight;
  return 0.0;
}

}  // namespace

const EpsEquilibrium* closest_profile(const std::vector<EpsEquilibrium>& found,
                                      double rho,
                                      double beta_on_mixed_signal) {
  const EpsEquilibrium* best = nullptr;
  double best_d = std::numeric_limits<double>::infinity();
  for (const auto& eq : found) {
    const double w1 =
        policy_weight(eq.policy.on_signal_1, PricingPlan::UniformLow);
    const double w0 =
        policy_weight(eq.policy.on_signal_0, PricingPlan::UniformHigh);
    const double beta_d = std::min(std::fabs(w1 - beta_on_mixed_signal),
                                   std::fabs(w0 - beta_on_mixed_signal));
    const double d = std::max(std::fabs(eq.rho - rho), beta_d);
    if (d < best_d) {
      best_d = d;
      best = &eq;
    }
  }
  return best;
}

SimulationReport monte_carlo_play(const EquilibriumOutcome& outcome,
                                  const MarketParams& params, std::uint64_t n,
                                  std::uint64_t seed) {
  params.validate();
  if (n < 1) throw std::invalid_argument("monte_carlo_play: need n >= 1");

  auto draw_plan = [](const std::vector<PlanWeight>& mix, double u) {
    double acc = 0.0;
    for (const auto& pw : mix) {
      acc += pw.weight;
      if (u <= acc) return pw.plan;
    }
    return mix.back().plan;
  };

  constexpr std::uint64_t kChunk = 1 << 16;
  Accumulator revenue, payoff, payoff_low, payoff_high;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::uint64_t chunks = (n + kChunk - 1) / kChunk;
  for (std::uint64_t c = 0; c < chunks; ++c) {
    auto rng = make_stream(seed, c);
    const std::uint64_t lo = c * kChunk;
    const std::uint64_t hi = std::min(n, lo + kChunk);
    for (std::uint64_t it = lo; it < hi; ++it) {
      const Preference vi =
          unit(rng) < params.alpha ? Preference::High : Preference::Low;
      const Preference vj =
          unit(rng) < params.alpha ? Preference::High : Preference::Low;
      double xi, xj;
      if (vi == vj) {
        if (vi == Preference::High) {
          xi = unit(rng) < outcome.rho_star ? 0.0 : 1.0;
          xj = unit(rng) < outcome.rho_star ? 0.0 : 1.0;
        } else {
          xi = xj = 1.0;
        }
      } else {
        xi = xj = 0.0;
      }
      const double signal = std::min(xi, xj);
      const auto& mix =
          signal == 1.0 ? outcome.policy.on_signal_1 : outcome.policy.on_signal_0;
      const PricingPlan plan = draw_plan(mix, unit(rng));
      const bool i_first = unit(rng) < 0.5;
      const double v1 = params.value_of(i_first ? vi : vj);
      const double v2 = params.value_of(i_first ? vj : vi);
      const double p1 = plan_first_price(plan, params);
      const bool a1 = purchase_decision(v1, p1);
      const double p2 = plan_second_price(plan, a1, params);
      const bool a2 = purchase_decision(v2, p2);
      revenue.add((a1 ? p1 : 0.0) + (a2 ? p2 : 0.0));

      const double ui = social_utility(vi, vj, {xi, xj}, params);
      const double uj = social_utility(vj, vi, {xj, xi}, params);
      const double pi = buyer_final_payoff(params.value_of(vi),
                                           i_first ? p1 : p2, ui);
      const double pj = buyer_final_payoff(params.value_of(vj),
                                           i_first ? p2 : p1, uj);
      payoff.add(0.5 * (pi + pj));
      (vi == Preference::High ? payoff_high : payoff_low).add(pi);
      (vj == Preference::High ? payoff_high : payoff_low).add(pj);
    }
  }

  SimulationReport rep;
  rep.mechanism = "strategic-two-buyer";
  rep.samples = n;
  rep.seed = seed;
  rep.mean_revenue = revenue.mean();
  rep.stderr_revenue = revenue.stderr_mean();
  rep.mean_payoff = payoff.mean();
  rep.stderr_payoff = payoff.stderr_mean();
  rep.mean_payoff_low = payoff_low.mean();
  rep.stderr_payoff_low = payoff_low.stderr_mean();
  rep.mean_payoff_high = payoff_high.mean();
  rep.stderr_payoff_high = payoff_high.stderr_mean();
  return rep;
}

namespace {

struct ValuePosterior {
  // Joint over (v1, v2) described through pair masses; orders within the
  // mixed mass are equally likely.
  double hh, ll, mixed;

  double first_high() const { return hh + mixed / 2.0; }
};

// Probability the arriving buyer accepts a price, given his chance of being
// the high type.
double accept_prob(double p, double prob_high, const MarketParams& params) {
  if (p <= params.v_low) return 1.0;
  if (p <= params.v_high) return prob_high;
  return 0.0;
}

}  // namespace

bool verify_binary_pricing(const MarketParams& params,
                           std::vector<double> price_grid) {
  params.validate();
  bool has_interior = false, has_outside = false;
  for (double p : price_grid) {
    if (p > params.v_low && p < params.v_high) has_interior = true;
    if (p < params.v_low || p > params.v_high) has_outside = true;
  }
  if (!has_interior || !has_outside)
    throw std::invalid_argument(
        "verify_binary_pricing: grid needs interior and outside prices");
  for (int k = 1; k <= 16; ++k)
    price_grid.push_back(params.v_low + k * params.diff() / 17.0);
  price_grid.push_back(params.v_low);
  price_grid.push_back(params.v_high);
  std::sort(price_grid.begin(), price_grid.end());
  price_grid.erase(std::unique(price_grid.begin(), price_grid.end()),
                   price_grid.end());

  const double tol = 1e-12 * params.v_high;
  auto is_binary = [&](double p) {
    return p == params.v_low || p == params.v_high;
  };

  // Best second-period revenue and the binary-optimality flag for a given
  // high-type probability of the remaining buyer.
  auto second_period = [&](double prob_high, double* best_rev) {
    double best = -1.0;
    for (double p : price_grid)
      best = std::max(best, p * accept_prob(p, prob_high, params));
    *best_rev = best;
    for (double p : price_grid) {
      const double rev = p * accept_prob(p, prob_high, params);
      if (!is_binary(p) && rev >= best - tol) return false;
    }
    return true;
  };

  for (int si = 0; si <= 20; ++si) {
    const double s = si / 20.0;
    auto [on1, on0] = signal_posteriors(1.0 - std::sqrt(s), params);
    for (const SignalPosterior& post : {on1, on0}) {
      const ValuePosterior joint{post.hh, post.ll, post.mixed};
      const double h1 = joint.first_high();
      double best_total = -1.0;
      std::vector<double> totals(price_grid.size());
      for (std::size_t i = 0; i < price_grid.size(); ++i) {
        const double p1 = price_grid[i];
        const double buy = accept_prob(p1, h1, params);
        double total = buy * p1;
        // Posterior on the second buyer per first-period branch.
        if (p1 <= params.v_low || p1 > params.v_high) {
          // Uninformative probe: second-buyer belief stays marginal.
          double rev2 = 0.0;
          if (!second_period(joint.hh + joint.mixed / 2.0, &rev2))
            return false;
          total += rev2;
        } else {
          if (h1 > 0.0) {
            // Purchase reveals a high first buyer.
            double rev2 = 0.0;
            if (!second_period(joint.hh / h1, &rev2)) return false;
            total += buy * rev2;
          }
          if (h1 < 1.0) {
            double rev2 = 0.0;
            if (!second_period((joint.mixed / 2.0) / (1.0 - h1), &rev2))
              return false;
            total += (1.0 - buy) * rev2;
          }
        }
        totals[i] = total;
        best_total = std::max(best_total, total);
      }
      for (std::size_t i = 0; i < price_grid.size(); ++i)
        if (!is_binary(price_grid[i]) && totals[i] >= best_total - tol)
          return false;
    }
  }
  return true;
}

namespace {

void check_utility_contract(const InteractionUtility& u, double l,
                            const std::vector<double>& grid) {
  const double tol = 1e-9;
  if (std::fabs(u.same(1.0, 1.0) - 1.0) > tol)
    throw std::invalid_argument(
        "interaction utility: same-preference u(1,1) must equal 1");
  if (std::fabs(u.same(0.0, 0.0)) > tol)
    throw std::invalid_argument(
        "interaction utility: same-preference u(0,0) must equal 0");
  for (double x : {0.0, 1.0})
    if (std::fabs(u.same(x, 1.0) - u.same(x, 0.0) - l) > tol)
      throw std::invalid_argument(
          "interaction utility: silence loss u(x,1)-u(x,0) must equal l");
  for (double a : grid)
    for (double b : grid) {
      if (u.same(a, b) < -tol)
        throw std::invalid_argument(
            "interaction utility: same-preference utility must be nonnegative");
      if (u.diff(a, b) > tol)
        throw std::invalid_argument(
            "interaction utility: cross-preference utility must be nonpositive");
    }
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    for (double b : grid) {
      if (u.same(grid[i + 1], b) < u.same(grid[i], b) - tol ||
          u.same(b, grid[i + 1]) < u.same(b, grid[i]) - tol)
        throw std::invalid_argument(
            "interaction utility: same-preference utility must be "
            "nondecreasing");
      if (u.diff(grid[i + 1], b) > u.diff(grid[i], b) + tol ||
          u.diff(b, grid[i + 1]) > u.diff(b, grid[i]) + tol)
        throw std::invalid_argument(
            "interaction utility: cross-preference utility must be "
            "nonincreasing");
    }
}

}  // namespace

bool verify_frequency_polarization(const MarketParams& params,
                                   const std::vector<double>& freq_grid,
                                   const InteractionUtility& utility) {
  params.validate();
  std::vector<double> grid = freq_grid;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  if (grid.empty() || grid.front() != 0.0 || grid.back() != 1.0)
    throw std::invalid_argument(
        "verify_frequency_polarization: grid must span 0 and 1");
  check_utility_contract(utility, params.l, grid);

  const double a = params.alpha;
  const double p_hh = a * a, p_ll = (1.0 - a) * (1.0 - a),
               p_mix = 2.0 * a * (1.0 - a);
  constexpr double kWStep = 1e-4;
  const double eps = std::max(2.0 * (1.0 + params.v_high) * kWStep,
                              1e-6 * params.v_high);
  const double tie_tol = 1e-9 * params.v_high;

  // Revenue of each plan conditional on the pair type, and the high buyer's
  // surplus per plan; posteriors then reduce everything to dot products.
  double rev_hh[4], rev_ll[4], rev_mix[4], surplus[4];
  for (int i = 0; i < 4; ++i) {
    rev_hh[i] = detail::plan_revenue(kAllPlans[i], 1, 0, 0, params);
    rev_ll[i] = detail::plan_revenue(kAllPlans[i], 0, 1, 0, params);
    rev_mix[i] = detail::plan_revenue(kAllPlans[i], 0, 0, 1, params);
    surplus[i] = detail::plan_surplus_high_pair(kAllPlans[i], params);
  }
  const std::size_t ng = grid.size();
  std::vector<double> u_same(ng * ng);
  for (std::size_t i = 0; i < ng; ++i)
    for (std::size_t j = 0; j < ng; ++j)
      u_same[i * ng + j] = utility.same(grid[i], grid[j]);

  bool all_polarized = true;

  // Symmetric high-pair strategies supported on {lo, hi} with weight w on
  // lo, including pure ones (lo == hi).  For each candidate the seller's
  // best replies are recomputed from the Bayes posterior per signal; where
  // plans tie, one signal may carry a seller mixture.
  for (std::size_t ia = 0; ia < grid.size(); ++ia) {
    for (std::size_t ib = ia; ib < grid.size(); ++ib) {
      const double lo = grid[ia], hi = grid[ib];
      const bool pure = ia == ib;
      for (double w = pure ? 1.0 : kWStep; w <= 1.0 + 1e-12;
           w += pure ? 2.0 : kWStep) {
        const double p_sig_hi = (1.0 - w) * (1.0 - w);
        const double p_sig_lo = 1.0 - p_sig_hi;

        // High-buyer surplus at a signal under the seller's best reply.
        // tied = indices of plans within tolerance of the best revenue at
        // that signal; mixtures are only relevant on tied signals.
        struct SigInfo {
          int tied[4];
          int n_tied = 0;
        };
        auto info_at = [&](double x) {
          const double hh_emit =
              (x == lo ? p_sig_lo : 0.0) + (x == hi ? p_sig_hi : 0.0);
          const double ll_emit = x == 1.0 ? 1.0 : 0.0;
          const double mix_emit = x == 0.0 ? 1.0 : 0.0;
          const double total =
              p_hh * hh_emit + p_ll * ll_emit + p_mix * mix_emit;
          double hh = 1.0, ll = 0.0, mx = 0.0;  // off-path: a high pair
          if (total > 0.0) {
            hh = p_hh * hh_emit / total;
            ll = p_ll * ll_emit / total;
            mx = p_mix * mix_emit / total;
          }
          SigInfo info;
          double best = -1.0;
          double rev[4];
          for (int i = 0; i < 4; ++i) {
            rev[i] = hh * rev_hh[i] + ll * rev_ll[i] + mx * rev_mix[i];
            best = std::max(best, rev[i]);
          }
          for (int i = 0; i < 4; ++i)
            if (rev[i] >= best - tie_tol) info.tied[info.n_tied++] = i;
          return info;
        };

        // Distinct signals that can arise: each deviation x lands on
        // min(x, lo) or min(x, hi), so lo, hi, and every grid value below
        // hi matter; precompute per-signal info lazily on the grid.
        std::vector<SigInfo> by_grid(grid.size());
        std::vector<char> have(grid.size(), 0);
        auto grid_index = [&](double x) {
          return static_cast<std::size_t>(
              std::lower_bound(grid.begin(), grid.end(), x) - grid.begin());
        };
        auto info_of = [&](double x) -> const SigInfo& {
          const std::size_t k = grid_index(x);
          if (!have[k]) {
            by_grid[k] = info_at(x);
            have[k] = 1;
          }
          return by_grid[k];
        };

        // Seller candidates: every signal plays its first tied plan except
        // possibly one signal that mixes its first two tied plans with
        // weight mw.  mix_sig = -1 means no mixing anywhere.
        const double sig_values[2] = {lo, hi};
        bool sustained = false;
        for (int mix_choice = -1; mix_choice < 2 && !sustained; ++mix_choice) {
          double mix_signal = 0.0;
          if (mix_choice >= 0) {
            mix_signal = sig_values[mix_choice];
            if (mix_choice == 1 && hi == lo) continue;
            if (info_of(mix_signal).n_tied < 2) continue;
          }
          const double mstep = mix_choice >= 0 ? 1e-3 : 2.0;
          for (double mw = mix_choice >= 0 ? 0.0 : 1.0;
               mw <= 1.0 + 1e-12 && !sustained; mw += mstep) {
            auto surplus_at = [&](double x) {
              const SigInfo& info = info_of(x);
              if (mix_choice >= 0 && x == mix_signal && info.n_tied >= 2)
                return mw * surplus[info.tied[0]] +
                       (1.0 - mw) * surplus[info.tied[1]];
              return surplus[info.tied[0]];
            };
            auto high_payoff = [&](std::size_t ix) {
              const double x = grid[ix];
              const double vs_lo =
                  u_same[ix * ng + ia] + surplus_at(std::min(x, lo));
              const double vs_hi =
                  u_same[ix * ng + ib] + surplus_at(std::min(x, hi));
              return w * vs_lo + (1.0 - w) * vs_hi;
            };
            const double pay_lo = high_payoff(ia);
            const double pay_hi = high_payoff(ib);
            double best_dev = -1e300;
            for (std::size_t ix = 0; ix < ng; ++ix)
              best_dev = std::max(best_dev, high_payoff(ix));
            const bool support_ok =
                pure ? pay_hi >= best_dev - eps
                     : (pay_lo >= best_dev - eps &&
                        pay_hi >= best_dev - eps &&
                        std::fabs(pay_lo - pay_hi) <= eps);
            if (support_ok) sustained = true;
          }
        }
        if (sustained) {
          const bool polarized = (pure && (hi == 0.0 || hi == 1.0)) ||
                                 (!pure && lo == 0.0 && hi == 1.0);
          if (!polarized) all_polarized = false;
        }
        if (pure) break;
      }
    }
  }
  return all_polarized;
}

}  // namespace sigprice
