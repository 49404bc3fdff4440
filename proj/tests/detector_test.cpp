#include "disclosure/detector.hpp"

#include <gtest/gtest.h>

#include "disclosure/oracle.hpp"
#include "disclosure/solver.hpp"
#include "support.hpp"

using namespace disclosure;

namespace {

SilentPathPolicy random_policy(test_support::ParamSampler& s, int T) {
  SilentPathPolicy p = SilentPathPolicy::no_information(T);
  for (int t = 0; t < T; ++t) {
    const int kind = s.integer(0, 3);
    p.bad[t] = kind == 0 ? 0.0 : kind == 1 ? 1.0 : s.unit();
  }
  return p;
}

}  // namespace

TEST(BeliefUpdate, Examples) {
  EXPECT_DOUBLE_EQ(*belief_update(0.5, 1.0, 0.0, 0.0, Message::kSilent), 1.0);
  EXPECT_DOUBLE_EQ(*belief_update(0.5, 1.0, 1.0, 0.0, Message::kSilent), 0.5);
  EXPECT_NEAR(*belief_update(0.9, 1.0, 0.4, 0.3, Message::kSilent), 0.63 / (0.63 + 0.37 * 0.4),
              1e-15);
  EXPECT_DOUBLE_EQ(*belief_update(0.9, 1.0, 0.4, 0.3, Message::kDeclare), 0.0);
}

TEST(BeliefUpdate, ZeroProbabilityMessageIsUnreachable) {
  EXPECT_FALSE(belief_update(0.0, 1.0, 0.0, 0.2, Message::kSilent).has_value());
  EXPECT_FALSE(belief_update(0.7, 1.0, 1.0, 0.0, Message::kDeclare).has_value());
}

TEST(BeliefPath, NoInformationTracksSurvival) {
  const auto p = make_params(0.8, 0.25, 6, 0.3);
  const auto path = belief_path(p, SilentPathPolicy::no_information(6));
  for (int t = 1; t <= 6; ++t) {
    EXPECT_NEAR(path.pi[t], survival(p, t), 1e-15);
    EXPECT_DOUBLE_EQ(path.reach[t], 1.0);
  }
}

TEST(BeliefPath, FullInformationReachEqualsSurvival) {
  const auto p = make_params(0.8, 0.25, 6, 0.3);
  const auto path = belief_path(p, SilentPathPolicy::full_information(6));
  for (int t = 1; t <= 6; ++t) {
    EXPECT_DOUBLE_EQ(path.pi[t], 1.0);
    EXPECT_NEAR(path.reach[t], survival(p, t), 1e-15);
  }
}

TEST(BeliefPath, StopsAtUnreachableHistory) {
  const auto path = belief_path(make_params(0.0, 0.3, 4, 0.3), SilentPathPolicy::full_information(4));
  EXPECT_FALSE(path.reachable(1));
  EXPECT_TRUE(std::isnan(path.pi[1]));
  EXPECT_DOUBLE_EQ(path.reach[4], 0.0);
}

TEST(SolveDp, SingleStepNoInformation) {
  for (double mu : {0.0, 0.05, 0.3, 0.9, 1.0}) {
    const double c = 0.4;
    const auto sol = solve_dp(make_params(mu, 0.2, 1, c), SilentPathPolicy::no_information(1));
    EXPECT_NEAR(sol.expected_cost, std::min(mu, c * (1 - mu)), 1e-15);
  }
}

TEST(SolveDp, FullInformationCostsNothing) {
  test_support::ParamSampler sampler(51);
  for (int i = 0; i < 100; ++i) {
    const auto p = sampler.params(1, 40);
    const auto sol = solve_dp(p, SilentPathPolicy::full_information(p.horizon));
    EXPECT_NEAR(sol.expected_cost, 0.0, 1e-15);
    for (int t = 1; t <= p.horizon; ++t) EXPECT_TRUE(sol.wait_is_optimal[t - 1]);
  }
}

TEST(SolveDp, OptimalMechanismIsFollowed) {
  const auto p = make_params(0.9, 0.3, 5, 0.1);
  const auto mech = algorithm1(p).mechanism;
  const auto sol = solve_dp(p, tbp_to_silent_path(mech));
  for (int t = 1; t <= mech.threshold(); ++t) EXPECT_TRUE(sol.wait_is_optimal[t - 1]) << t;
}

TEST(SolveDp, RejectsNoisyGoodState) {
  SilentPathPolicy p = SilentPathPolicy::no_information(3);
  p.good[1] = 0.9;
  EXPECT_THROW(solve_dp(make_params(0.5, 0.2, 3, 0.2), p), UnsupportedPolicyError);
  EXPECT_THROW(solve_dp(make_params(0.5, 0.2, 4, 0.2), SilentPathPolicy::no_information(3)),
               ParameterError);
}

// Under no information the silent path is deterministic, so the DP value
// is the open-loop minimum over declaration times.
TEST(SolveDpProperty, NoInformationValueIsOpenLoopMinimum) {
  test_support::ParamSampler sampler(52);
  for (int i = 0; i < 300; ++i) {
    const auto p = sampler.params(1, 60);
    double best = no_info_expected_cost(p, 1);
    for (int tau = 2; tau <= p.horizon + 1; ++tau) best = std::min(best, no_info_expected_cost(p, tau));
    EXPECT_NEAR(solve_dp(p, SilentPathPolicy::no_information(p.horizon)).expected_cost, best, 1e-12);
  }
}

TEST(SolveDpProperty, NeverAboveObeyingOrDeclaring) {
  test_support::ParamSampler sampler(53);
  for (int i = 0; i < 300; ++i) {
    const auto p = sampler.params(1, 30);
    const auto policy = random_policy(sampler, p.horizon);
    const auto sol = solve_dp(p, policy);
    EXPECT_LE(sol.expected_cost, obedient_expected_cost(p, policy) + 1e-12);
    EXPECT_LE(sol.expected_cost, p.prior_good + 1e-12);
    EXPECT_GE(sol.expected_cost, -1e-15);
  }
}

TEST(SolveDpProperty, MatchesEnumeration) {
  test_support::ParamSampler sampler(54);
  for (int i = 0; i < 100; ++i) {
    const auto p = sampler.params(1, 7);
    const auto policy = random_policy(sampler, p.horizon);
    EXPECT_NEAR(solve_dp(p, policy).expected_cost, enumerate_stopping_rules(p, policy), 1e-9);
  }
}

TEST(BestResponseObeys, Examples) {
  const auto p = make_params(0.9, 0.3, 50, 0.1);
  EXPECT_TRUE(best_response_obeys(p, SilentPathPolicy::full_information(50)));
  EXPECT_TRUE(best_response_obeys(p, tbp_to_silent_path(algorithm1(p).mechanism)));
  EXPECT_FALSE(best_response_obeys(p, tbp_to_silent_path(TbpMechanism::no_information(50))));
}

// Two independent routes to obedience of a TBP mechanism: the closed-form
// slacks and the detector's dynamic program.
TEST(BestResponseObeysProperty, AgreesWithSlackSigns) {
  test_support::ParamSampler sampler(55);
  int obeyed = 0;
  int violated = 0;
  for (int i = 0; i < 2000; ++i) {
    const auto p = sampler.params(1, 25);
    const TbpMechanism m(sampler.integer(1, p.horizon), sampler.unit(), p.horizon);
    const auto report = tbp_obedience(p, m, 0.0);
    double min_slack = 1.0;
    for (double s : report.slack) min_slack = std::min(min_slack, std::abs(s));
    if (min_slack < 1e-7) continue;  // too close to call
    const bool dp = best_response_obeys(p, tbp_to_silent_path(m));
    EXPECT_EQ(dp, report.satisfied);
    (dp ? obeyed : violated)++;
  }
  EXPECT_GT(obeyed, 100);
  EXPECT_GT(violated, 100);
}

TEST(ThresholdAt, LastPeriodCrossing) {
  test_support::ParamSampler sampler(56);
  for (int i = 0; i < 50; ++i) {
    const auto p = sampler.params(1, 10);
    const auto policy = random_policy(sampler, p.horizon);
    const double c = p.delay_cost;
    EXPECT_NEAR(threshold_at(p, policy, p.horizon), c / (1.0 + c), 1e-11);
  }
}

TEST(ThresholdAt, FreeWaiting) {
  const auto p = make_params(0.7, 0.3, 6, 0.0);
  for (int t = 1; t <= 6; ++t) EXPECT_DOUBLE_EQ(threshold_at(p, SilentPathPolicy::stationary(6, 0.4), t), 0.0);
}

TEST(ThresholdAt, ConsistentWithDpDecision) {
  const auto p = make_params(0.9, 0.3, 5, 0.1);
  const auto policy = tbp_to_silent_path(algorithm1(p).mechanism);
  const auto sol = solve_dp(p, policy, DpOptions{0.0, true});
  for (int t = 1; t <= 5; ++t) {
    const double pi = sol.beliefs.pi[t];
    if (std::abs(pi - sol.thresholds[t - 1]) < 1e-9) continue;
    EXPECT_EQ(sol.wait_is_optimal[t - 1], pi > sol.thresholds[t - 1]) << t;
  }
}

TEST(ThresholdAtProperty, SeparatesDeclareFromWait) {
  test_support::ParamSampler sampler(57);
  for (int i = 0; i < 60; ++i) {
    const auto p = sampler.params(1, 12);
    const auto policy = random_policy(sampler, p.horizon);
    const int t = sampler.integer(1, p.horizon);
    const double l = threshold_at(p, policy, t);
    for (double pi : {0.5 * l, l + 0.5 * (1.0 - l)}) {
      if (std::abs(pi - l) < 1e-6) continue;
      const bool wait = wait_value_at(p, policy, t, pi) < pi;
      EXPECT_EQ(wait, pi > l);
    }
  }
}

// The concave value function shows up as a convex, increasing declare-minus-wait gap.
TEST(WaitValueProperty, ConcaveInBelief) {
  test_support::ParamSampler sampler(58);
  for (int i = 0; i < 40; ++i) {
    const auto p = sampler.params(2, 12);
    const auto policy = random_policy(sampler, p.horizon);
    const int t = sampler.integer(1, p.horizon);
    std::vector<double> w(101);
    for (int k = 0; k <= 100; ++k) {
      const double pi = k / 100.0;
      w[k] = std::min(pi, wait_value_at(p, policy, t, pi));
    }
    for (int k = 1; k < 100; ++k) EXPECT_GE(w[k], 0.5 * (w[k - 1] + w[k + 1]) - 1e-12);
  }
}

TEST(ExpectedPrincipalUtility, MatchesTbpFormula) {
  test_support::ParamSampler sampler(59);
  for (int i = 0; i < 200; ++i) {
    const auto p = sampler.params(1, 50);
    const TbpMechanism m(sampler.integer(1, p.horizon), sampler.unit(), p.horizon);
    EXPECT_NEAR(expected_principal_utility(p, tbp_to_silent_path(m)), tbp_expected_utility(p, m),
                1e-10);
  }
}

TEST(ObedientExpectedCost, ObedientMechanismCostEqualsDp) {
  test_support::ParamSampler sampler(60);
  for (int i = 0; i < 200; ++i) {
    const auto p = sampler.params(1, 50);
    const auto policy = tbp_to_silent_path(algorithm1(p).mechanism);
    EXPECT_NEAR(obedient_expected_cost(p, policy), solve_dp(p, policy).expected_cost, 1e-10);
  }
}
