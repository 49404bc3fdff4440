#ifndef DISCLOSURE_DETECTOR_HPP_
#define DISCLOSURE_DETECTOR_HPP_

// The detector's side: Bayesian beliefs along the all-silent message path and
// the finite-horizon stopping problem it solves given a committed policy.
//
// Value recursion on the belief pi_t = P(s_t = g | m_{1:t}):
//   W_T(pi)  = min(pi, c (1 - pi))
//   W_t(pi)  = min(pi, c (1 - pi) + P(k | pi) W_{t+1}(pi^k) + P(d | pi) W_{t+1}(pi^d))
// With the good state always silent, a "declare" message reveals the bad
// state (pi^d = 0, W = 0), so only the silent spine needs to be solved.

#include <cmath>
#include <optional>
#include <vector>

#include "disclosure/errors.hpp"
#include "disclosure/mechanisms.hpp"
#include "disclosure/model.hpp"
#include "disclosure/numerics.hpp"

namespace disclosure {

enum class Message { kSilent, kDeclare };

// Posterior of the good state after one more message. `hazard` is the
// transition applied before the message is drawn (zero for the first message,
// which is drawn from the prior). nullopt when the message has probability 0.
inline std::optional<double> belief_update(double pi, double rho_good, double rho_bad,
                                           double hazard, Message message) {
  const double good = pi * (1.0 - hazard);
  const double bad = 1.0 - good;
  const double pg = message == Message::kSilent ? rho_good : 1.0 - rho_good;
  const double pb = message == Message::kSilent ? rho_bad : 1.0 - rho_bad;
  const double denom = good * pg + bad * pb;
  if (denom <= 0.0) return std::nullopt;
  return good * pg / denom;
}

// Probability of the next message being silent given the current belief.
inline double silent_probability(double pi, double rho_good, double rho_bad, double hazard) {
  const double good = pi * (1.0 - hazard);
  return good * rho_good + (1.0 - good) * rho_bad;
}

struct BeliefPath {
  // pi[0] is the prior; pi[t] the posterior after t silent messages.
  // Entries past the first unreachable time are NaN.
  std::vector<double> pi;
  // reach[t] = P(m_{1:t} = (k)^t); reach[0] = 1.
  std::vector<double> reach;

  bool reachable(int t) const { return reach.at(t) > 0.0; }
};

inline void check_policy(const ModelParams& params, const SilentPathPolicy& policy) {
  params.validate();
  policy.validate();
  check_horizon(params, policy.horizon());
}

inline BeliefPath belief_path(const ModelParams& params, const SilentPathPolicy& policy) {
  check_policy(params, policy);
  const int T = params.horizon;
  BeliefPath path;
  path.pi.assign(T + 1, std::nan(""));
  path.reach.assign(T + 1, 0.0);
  path.pi[0] = params.prior_good;
  path.reach[0] = 1.0;
  for (int t = 1; t <= T; ++t) {
    const double hazard = t == 1 ? 0.0 : params.hazard;
    const double prev = path.pi[t - 1];
    const double pk = silent_probability(prev, policy.good_at(t), policy.bad_at(t), hazard);
    const auto next = belief_update(prev, policy.good_at(t), policy.bad_at(t), hazard,
                                    Message::kSilent);
    if (!next) break;
    path.pi[t] = *next;
    path.reach[t] = path.reach[t - 1] * pk;
  }
  return path;
}

struct DetectorSolution {
  BeliefPath beliefs;
  // Indexed by t - 1 for t = 1..T, evaluated at the silent-path belief.
  // Unreachable times hold NaN values and wait_is_optimal = true.
  std::vector<double> values;         // W_t
  std::vector<double> declare_value;  // pi_t
  std::vector<double> wait_value;     // c (1 - pi_t) + E[W_{t+1}]
  std::vector<bool> wait_is_optimal;
  std::vector<double> thresholds;  // l_t; empty unless requested
  // Optimal expected cost before the first message is drawn.
  double expected_cost = 0.0;
};

struct DpOptions {
  double tie_tolerance = kObedienceTolerance;  // wait wins ties within this margin
  bool with_thresholds = false;
};

inline void require_revealing_declare(const SilentPathPolicy& policy) {
  if (!policy.good_always_silent()) {
    throw UnsupportedPolicyError(
        "detector dynamic program requires silence in the good state at every time");
  }
}

// Wait value at time t for an arbitrary belief pi, with optimal continuation.
inline double wait_value_at(const ModelParams& params, const SilentPathPolicy& policy, int t,
                            double pi) {
  check_policy(params, policy);
  require_revealing_declare(policy);
  const int T = params.horizon;
  if (t < 1 || t > T) throw IndexError("wait_value_at: t outside [1, T]");
  // Forward: beliefs and silent-message probabilities from (t, pi).
  std::vector<double> belief{pi};
  std::vector<double> pk_next;
  for (int s = t + 1; s <= T; ++s) {
    const double cur = belief.back();
    const double pk = silent_probability(cur, 1.0, policy.bad_at(s), params.hazard);
    const auto next = belief_update(cur, 1.0, policy.bad_at(s), params.hazard, Message::kSilent);
    if (!next) break;
    pk_next.push_back(pk);
    belief.push_back(*next);
  }
  // Backward over the reachable stretch. Beyond it the continuation is 0.
  const double c = params.delay_cost;
  double continuation = 0.0;  // E[W_{s+1}] seen from s
  for (int i = static_cast<int>(belief.size()) - 1; i >= 1; --i) {
    const double b = belief[i];
    const double w = std::min(b, c * (1.0 - b) + continuation);
    continuation = pk_next[i - 1] * w;
  }
  return c * (1.0 - pi) + continuation;
}

// Belief cutoff at time t: declaring is (weakly) better below it, waiting
// strictly better above. 0 when waiting wins on all of (0, 1]; 1 when
// declaring is never beaten.
inline double threshold_at(const ModelParams& params, const SilentPathPolicy& policy, int t,
                           double tol = 1e-12) {
  auto declares = [&](double pi) { return pi <= wait_value_at(params, policy, t, pi); };
  if (declares(1.0)) return 1.0;
  return bisect_boundary(declares, 0.0, 1.0, tol).first;
}

inline DetectorSolution solve_dp(const ModelParams& params, const SilentPathPolicy& policy,
                                 const DpOptions& options = {}) {
  check_policy(params, policy);
  require_revealing_declare(policy);
  const int T = params.horizon;
  const double c = params.delay_cost;

  DetectorSolution sol;
  sol.beliefs = belief_path(params, policy);
  const auto nan = std::nan("");
  sol.values.assign(T, nan);
  sol.declare_value.assign(T, nan);
  sol.wait_value.assign(T, nan);
  sol.wait_is_optimal.assign(T, true);

  const auto& pi = sol.beliefs.pi;
  const auto& reach = sol.beliefs.reach;
  double next_value = 0.0;  // W_{t+1} at the silent-path belief
  for (int t = T; t >= 1; --t) {
    if (!sol.beliefs.reachable(t)) continue;
    double continuation = 0.0;
    if (t < T && sol.beliefs.reachable(t + 1)) {
      continuation = (reach[t + 1] / reach[t]) * next_value;
    }
    const double declare = pi[t];
    const double wait = c * (1.0 - pi[t]) + continuation;
    sol.declare_value[t - 1] = declare;
    sol.wait_value[t - 1] = wait;
    sol.wait_is_optimal[t - 1] = wait <= declare + options.tie_tolerance;
    sol.values[t - 1] = std::min(declare, wait);
    next_value = sol.values[t - 1];
  }
  // A declare message at t = 1 reveals the bad state and costs nothing.
  sol.expected_cost = sol.beliefs.reachable(1) ? reach[1] * sol.values[0] : 0.0;

  if (options.with_thresholds) {
    sol.thresholds.resize(T);
    for (int t = 1; t <= T; ++t) sol.thresholds[t - 1] = threshold_at(params, policy, t);
  }
  return sol;
}

// True when following every recommendation is a best response: waiting is
// optimal at every reachable silent history. Declare recommendations are
// obeyed automatically because they reveal the bad state.
inline bool best_response_obeys(const ModelParams& params, const SilentPathPolicy& policy,
                                double tie_tolerance = kObedienceTolerance) {
  const auto sol = solve_dp(params, policy, DpOptions{tie_tolerance, false});
  for (int t = 1; t <= params.horizon; ++t) {
    if (!sol.wait_is_optimal[t - 1]) return false;
  }
  return true;
}

// Expected principal utility sum_t P(detector silent through t). With
// `waits` (a best-response plan on the silent path) the detector may cut the
// path short; without it the detector obeys.
inline double expected_principal_utility(const ModelParams& params,
                                         const SilentPathPolicy& policy,
                                         const std::vector<bool>* waits = nullptr) {
  const BeliefPath path = belief_path(params, policy);
  double total = 0.0;
  for (int t = 1; t <= params.horizon; ++t) {
    if (waits && !(*waits)[t - 1]) break;
    total += path.reach[t];
  }
  return total;
}

// Expected detector cost of obeying every recommendation, by direct summation
// over the jump time. Works for any policy on the silent path: a declare
// message in the good state is a false alarm.
inline double obedient_expected_cost(const ModelParams& params, const SilentPathPolicy& policy) {
  check_policy(params, policy);
  const JumpDistribution dist(params);
  const int T = params.horizon;
  const double c = params.delay_cost;
  double total = 0.0;
  for (int theta = 1; theta <= T + 1; ++theta) {
    double silent = 1.0;
    double cost = 0.0;
    for (int t = 1; t <= T; ++t) {
      const double rho = t < theta ? policy.good_at(t) : policy.bad_at(t);
      cost += silent * (1.0 - rho) * detector_cost(t, theta, c);
      silent *= rho;
    }
    cost += silent * detector_cost(T + 1, theta, c);
    total += dist.pmf(theta) * cost;
  }
  return total;
}

}  // namespace disclosure

#endif  // DISCLOSURE_DETECTOR_HPP_
