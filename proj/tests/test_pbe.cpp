#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "sigprice/pbe.hpp"

using namespace sigprice;

namespace {

MarketParams mp(double vl, double vh, double l = 0.5, double alpha = 0.5) {
  return MarketParams(vl, vh, l, alpha);
}

double policy_weight(const std::vector<PlanWeight>& mix, PricingPlan plan) {
  double w = 0.0;
  for (const auto& pw : mix)
    if (pw.plan == plan) w += pw.weight;
  return w;
}

// Independent boundary evaluation used to pin the classifier: checks each
// region's defining inequalities directly.
Region classify_by_inequalities(double vh, double vl, double l) {
  const double d = vh - vl;
  const double q = 1.0 - l;
  if (vl / vh >= 2.0 / 3.0) return Region::I;
  if (d <= 2.0 * q) return Region::II;
  if (vl * d < 8.0 * q * q && d * (vh - 2.0 * vl) < 4.0 * q * q)
    return Region::III;
  if (vl >= 0.4 * vh && vl * d >= 8.0 * q * q) return Region::IV;
  return Region::V;
}

}  // namespace

TEST_CASE("worked region classifications") {
  CHECK(classify_region(4, 3, 0.5) == Region::I);
  CHECK(classify_region(2, 1.2, 0.5) == Region::II);
  CHECK(classify_region(2.6, 1.4, 0.5) == Region::III);
  CHECK(classify_region(3, 1.5, 0.5) == Region::IV);
  CHECK(classify_region(4, 1, 0.5) == Region::V);
  CHECK_THROWS_AS(classify_region(1, 2, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(classify_region(2, 1, 1.5), std::invalid_argument);
}

TEST_CASE("region predicates partition the parameter space") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 20000; ++i) {
    const double vh = 0.05 + 9.95 * u(rng);
    const double vl = vh * (0.001 + 0.998 * u(rng));
    const double l = 0.001 + 0.998 * u(rng);
    CHECK(classify_region(vh, vl, l) == classify_by_inequalities(vh, vl, l));
  }
}

TEST_CASE("manipulation probability per region") {
  CHECK(manipulation_probability(Region::I, mp(3, 4)) == 0.0);
  CHECK(manipulation_probability(Region::III, mp(1.4, 2.6)) ==
        doctest::Approx(1.0 / 6.0).epsilon(1e-9));
  CHECK(manipulation_probability(Region::IV, mp(1.5, 3)) ==
        doctest::Approx(1.0 - std::sqrt(0.5)).epsilon(1e-12));
  CHECK(manipulation_probability(Region::V, mp(1, 4)) ==
        doctest::Approx(1.0 - std::sqrt(2.0 / 3.0)).epsilon(1e-12));
  CHECK_THROWS_AS(manipulation_probability(Region::I, mp(1, 4)),
                  std::invalid_argument);
  // Interior in the mixing regions.
  for (auto p : {mp(1.4, 2.6), mp(1.5, 3), mp(1, 4)}) {
    const Region r = classify_region(p.v_high, p.v_low, p.l);
    const double rho = manipulation_probability(r, p);
    CHECK(rho > 0.0);
    CHECK(rho < 1.0);
  }
}

TEST_CASE("seller mixing weights") {
  auto b4 = seller_mixing(Region::IV, mp(1.5, 3));
  REQUIRE(b4.has_value());
  CHECK(*b4 == doctest::Approx(0.028595).epsilon(1e-4));

  auto b5 = seller_mixing(Region::V, mp(1, 4));
  REQUIRE(b5.has_value());
  CHECK(*b5 == doctest::Approx(1.0 - 1.0 / std::sqrt(6.0)).epsilon(1e-12));

  CHECK_FALSE(seller_mixing(Region::II, mp(1.2, 2)).has_value());

  // On the mixing boundary the randomization degenerates.
  // v_low * diff == 8 (1-l)^2 at (v_low, v_high) = (2, 3), l = 1/2.
  auto b0 = seller_mixing(Region::IV, mp(2, 3, 0.5));
  REQUIRE(b0.has_value());
  CHECK(*b0 == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("posterior beliefs by manipulation level") {
  auto [h1, h0] = posterior_beliefs(0.0);
  CHECK(h1 == doctest::Approx(0.5));
  CHECK(h0 == doctest::Approx(0.0));
  std::tie(h1, h0) = posterior_beliefs(1.0);
  CHECK(h1 == doctest::Approx(0.0));
  CHECK(h0 == doctest::Approx(1.0 / 3.0));
  std::tie(h1, h0) = posterior_beliefs(0.5);
  CHECK(h1 == doctest::Approx(0.2));
  CHECK(h0 == doctest::Approx(3.0 / 11.0));
}

TEST_CASE("posterior beliefs agree with brute Bayes enumeration") {
  // Independent route: enumerate the four preference pairs and the four
  // manipulation outcomes of a high pair.
  for (double rho : {0.0, 0.1, 0.3, 0.5, 0.77, 1.0}) {
    double p_sig1_hh = 0.0;
    for (int mi = 0; mi <= 1; ++mi)
      for (int mj = 0; mj <= 1; ++mj) {
        const double pr = (mi ? rho : 1.0 - rho) * (mj ? rho : 1.0 - rho);
        const double xi = mi ? 0.0 : 1.0, xj = mj ? 0.0 : 1.0;
        if (std::min(xi, xj) == 1.0) p_sig1_hh += pr;
      }
    const double p1 = 0.25 * p_sig1_hh + 0.25;       // HH shows 1, LL shows 1
    const double p0 = 0.25 * (1 - p_sig1_hh) + 0.5;  // HH leftover + mixed
    auto [h1, h0] = posterior_beliefs(rho);
    CHECK(h1 == doctest::Approx(0.25 * p_sig1_hh / p1).epsilon(1e-12));
    CHECK(h0 == doctest::Approx(0.25 * (1 - p_sig1_hh) / p0).epsilon(1e-12));
  }
}

TEST_CASE("optimal pricing by belief parameter") {
  auto a = optimal_pricing_given_s(1.0, mp(2.8, 4.0));
  CHECK(a.on_signal_1[0].plan == PricingPlan::UniformLow);

  auto b = optimal_pricing_given_s(1.0, mp(2.0, 4.0));
  CHECK(b.on_signal_1[0].plan == PricingPlan::HighThenPersonalizedMatch);
  CHECK(b.on_signal_0[0].plan == PricingPlan::HighThenPersonalizedFlip);

  auto c = optimal_pricing_given_s(0.0, mp(1.2, 4.0));
  CHECK(c.on_signal_0[0].plan == PricingPlan::UniformHigh);
}

TEST_CASE("solved equilibria at the worked points") {
  auto r1 = solve_pbe(mp(3, 4));
  CHECK(r1.region == Region::I);
  CHECK(r1.rho_star == 0.0);
  CHECK_FALSE(r1.beta_star.has_value());
  CHECK(r1.policy.on_signal_1[0].plan == PricingPlan::UniformLow);
  CHECK(r1.policy.on_signal_0[0].plan == PricingPlan::UniformLow);

  auto r2 = solve_pbe(mp(1.2, 2));
  CHECK(r2.region == Region::II);
  CHECK(r2.rho_star == 0.0);
  CHECK(r2.policy.on_signal_1[0].plan ==
        PricingPlan::HighThenPersonalizedMatch);
  CHECK(r2.policy.on_signal_0[0].plan ==
        PricingPlan::HighThenPersonalizedFlip);

  auto r4 = solve_pbe(mp(1.9, 3.8));
  CHECK(r4.region == Region::IV);
  CHECK(r4.rho_star == doctest::Approx(1.0 - std::sqrt(0.5)).epsilon(1e-12));
  REQUIRE(r4.beta_star.has_value());
  CHECK(*r4.beta_star == doctest::Approx(0.12784).epsilon(1e-4));
  CHECK(policy_weight(r4.policy.on_signal_1, PricingPlan::UniformLow) ==
        doctest::Approx(*r4.beta_star));
}

TEST_CASE("policy weights sum to one and use binary prices") {
  for (auto p : {mp(3, 4), mp(1.2, 2), mp(1.4, 2.6), mp(1.9, 3.8), mp(1, 4)}) {
    const auto eq = solve_pbe(p);
    for (const auto* side : {&eq.policy.on_signal_1, &eq.policy.on_signal_0}) {
      double total = 0.0;
      for (const auto& pw : *side) {
        total += pw.weight;
        CHECK(pw.weight >= 0.0);
        const double p1 = plan_first_price(pw.plan, p);
        CHECK((p1 == p.v_low || p1 == p.v_high));
        for (bool a1 : {false, true}) {
          const double p2 = plan_second_price(pw.plan, a1, p);
          CHECK((p2 == p.v_low || p2 == p.v_high));
        }
      }
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(eq.belief_s ==
          doctest::Approx((1 - eq.rho_star) * (1 - eq.rho_star)));
  }
}

TEST_CASE("buyer indifference certificates in the mixing regions") {
  for (auto p : {mp(1.4, 2.6), mp(1.5, 3), mp(1.9, 3.8), mp(1, 4),
                 mp(0.5, 1.0, 0.8)}) {
    const auto eq = solve_pbe(p);
    if (eq.rho_star <= 0.0) continue;
    auto surplus = [&](const std::vector<PlanWeight>& mix) {
      double s = 0.0;
      for (const auto& pw : mix)
        s += pw.weight * detail::plan_surplus_high_pair(pw.plan, p);
      return s;
    };
    const double s1 = surplus(eq.policy.on_signal_1);
    const double s0 = surplus(eq.policy.on_signal_0);
    const double rho = eq.rho_star;
    const double honest = (1 - rho) * (1 + s1) + rho * (1 - p.l + s0);
    const double manip = (1 - rho) * (p.l + s0) + rho * s0;
    CHECK(std::fabs(honest - manip) < 1e-9);
  }
}

TEST_CASE("seller indifference wherever the policy mixes") {
  for (auto p : {mp(1.9, 3.8), mp(1.5, 3), mp(1, 4), mp(0.9, 4)}) {
    const auto eq = solve_pbe(p);
    if (!eq.beta_star) continue;
    auto [hh1, hh0] = detail::posterior_beliefs_alpha(eq.rho_star, 0.5);
    auto check_side = [&](const std::vector<PlanWeight>& mix, double hh,
                          double ll, double mixed) {
      if (mix.size() < 2) return;
      const double r0 = detail::plan_revenue(mix[0].plan, hh, ll, mixed, p);
      const double r1 = detail::plan_revenue(mix[1].plan, hh, ll, mixed, p);
      CHECK(std::fabs(r0 - r1) < 1e-9);
    };
    check_side(eq.policy.on_signal_1, hh1, 1.0 - hh1, 0.0);
    check_side(eq.policy.on_signal_0, hh0, 0.0, 1.0 - hh0);
  }
}

TEST_CASE("equilibrium policy maximizes revenue given its own belief") {
  for (auto p : {mp(3, 4), mp(1.2, 2), mp(1.4, 2.6), mp(1.9, 3.8), mp(1, 4)}) {
    const auto eq = solve_pbe(p);
    auto [hh1, hh0] = detail::posterior_beliefs_alpha(eq.rho_star, 0.5);
    const PricingPlan all[] = {PricingPlan::UniformLow,
                               PricingPlan::UniformHigh,
                               PricingPlan::HighThenPersonalizedMatch,
                               PricingPlan::HighThenPersonalizedFlip};
    auto best = [&](double hh, double ll, double mixed) {
      double b = -1.0;
      for (auto plan : all)
        b = std::max(b, detail::plan_revenue(plan, hh, ll, mixed, p));
      return b;
    };
    for (const auto& pw : eq.policy.on_signal_1)
      CHECK(detail::plan_revenue(pw.plan, hh1, 1 - hh1, 0, p) >=
            best(hh1, 1 - hh1, 0) - 1e-9);
    for (const auto& pw : eq.policy.on_signal_0)
      CHECK(detail::plan_revenue(pw.plan, hh0, 0, 1 - hh0, p) >=
            best(hh0, 0, 1 - hh0) - 1e-9);
  }
}

TEST_CASE("non-uniform prior: new low-uniform region") {
  auto eq = solve_pbe_nonuniform(mp(2, 4, 0.5, 0.3));
  CHECK(eq.region == Region::V);
  CHECK(eq.rho_star == 0.0);
  CHECK(eq.policy.on_signal_1[0].plan == PricingPlan::UniformLow);
  CHECK(eq.policy.on_signal_0[0].plan ==
        PricingPlan::HighThenPersonalizedFlip);
  // The band opens at 2 a^2 / (3 a^2 - 2 a + 1) = 0.18/0.67.
  CHECK(0.18 / 0.67 < 0.5);

  CHECK_THROWS_AS(solve_pbe_nonuniform(MarketParams(2, 4, 0.5, 0.6)),
                  std::invalid_argument);
}

TEST_CASE("non-uniform prior degenerates to the uniform solution") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double vh = 0.1 + 9.9 * u(rng);
    const double vl = vh * (0.01 + 0.98 * u(rng));
    const double l = 0.01 + 0.98 * u(rng);
    const MarketParams p(vl, vh, l, 0.5);
    CHECK(solve_pbe_nonuniform(p) == solve_pbe(p));
  }
}

TEST_CASE("manipulation shrinks with a lower share of high buyers") {
  auto sweep = [&](double vl, double vh, double l) {
    double prev = -1.0;
    for (int k = 0; k < 50; ++k) {
      const double alpha = 0.15 + (0.5 - 0.15) * k / 49.0;
      const auto eq = solve_pbe_nonuniform(MarketParams(vl, vh, l, alpha));
      if (prev >= 0.0) CHECK(eq.rho_star >= prev - 1e-12);
      prev = eq.rho_star;
    }
    const auto uniform = solve_pbe(MarketParams(vl, vh, l, 0.5));
    CHECK(prev == doctest::Approx(uniform.rho_star));
  };
  sweep(1.4, 2.6, 0.5);
  sweep(1.9, 3.8, 0.5);
  sweep(1.5, 3.0, 0.5);
}

TEST_CASE("non-uniform solution is continuous at the uniform prior") {
  for (auto base : {mp(1.4, 2.6), mp(1.9, 3.8), mp(1, 4), mp(3, 4)}) {
    MarketParams near_half = base;
    near_half.alpha = 0.5 - 1e-6;
    const auto a = solve_pbe_nonuniform(near_half);
    const auto b = solve_pbe(base);
    CHECK(std::fabs(a.rho_star - b.rho_star) < 1e-4);
    const double ba = a.beta_star.value_or(0.0);
    const double bb = b.beta_star.value_or(0.0);
    CHECK(std::fabs(ba - bb) < 1e-4);
  }
}

TEST_CASE("non-uniform buyer indifference still holds where buyers mix") {
  for (double alpha : {0.35, 0.45, 0.49}) {
    for (auto base : {mp(1.0, 4.0), mp(0.8, 4.0), mp(1.2, 5.0)}) {
      MarketParams p = base;
      p.alpha = alpha;
      const auto eq = solve_pbe_nonuniform(p);
      if (eq.rho_star <= 0.0) continue;
      auto surplus = [&](const std::vector<PlanWeight>& mix) {
        double s = 0.0;
        for (const auto& pw : mix)
          s += pw.weight * detail::plan_surplus_high_pair(pw.plan, p);
        return s;
      };
      const double s1 = surplus(eq.policy.on_signal_1);
      const double s0 = surplus(eq.policy.on_signal_0);
      const double rho = eq.rho_star;
      const double honest = (1 - rho) * (1 + s1) + rho * (1 - p.l + s0);
      const double manip = (1 - rho) * (p.l + s0) + rho * s0;
      CHECK(std::fabs(honest - manip) < 1e-9);
      // Bayes-consistent seller indifference across mixed plans.
      auto [hh1, hh0] = detail::posterior_beliefs_alpha(rho, alpha);
      auto check_side = [&](const std::vector<PlanWeight>& mix, double hh,
                            double ll, double mixed) {
        if (mix.size() < 2) return;
        CHECK(std::fabs(
                  detail::plan_revenue(mix[0].plan, hh, ll, mixed, p) -
                  detail::plan_revenue(mix[1].plan, hh, ll, mixed, p)) < 1e-9);
      };
      check_side(eq.policy.on_signal_1, hh1, 1 - hh1, 0);
      check_side(eq.policy.on_signal_0, hh0, 0, 1 - hh0);
    }
  }
}
