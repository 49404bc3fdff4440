#ifndef DISCLOSURE_ORACLE_HPP_
#define DISCLOSURE_ORACLE_HPP_

// Brute-force baselines for small instances. Obedience is certified through
// the detector's dynamic program, never through the closed-form slack, and
// the stopping problem is also solved by plain enumeration of rules.

#include <cmath>
#include <limits>
#include <string>

#include "disclosure/detector.hpp"
#include "disclosure/mechanisms.hpp"
#include "disclosure/model.hpp"

namespace disclosure {

inline constexpr int kMaxOracleHorizon = 12;
inline constexpr int kMaxEnumerationHorizon = 10;

struct OracleResult {
  TbpMechanism best_mechanism;
  double best_utility;
  double grid_step;
  int feasible_count;
};

// Enumerates thresholds 1..T and q_np on a uniform grid, keeps the
// mechanisms whose recommendations the detector's best response follows and
// returns the one with highest utility (ties: smaller n_p, then smaller q).
inline OracleResult brute_force_tbp(const ModelParams& params, double grid_step) {
  params.validate();
  if (!(grid_step > 0.0 && grid_step <= 0.1)) {
    throw ParameterError("grid_step", "grid step must lie in (0, 0.1]");
  }
  if (params.horizon > kMaxOracleHorizon) {
    throw ScaleError("brute_force_tbp: T = " + std::to_string(params.horizon) +
                     " exceeds " + std::to_string(kMaxOracleHorizon));
  }
  const int T = params.horizon;
  const int steps = static_cast<int>(std::lround(1.0 / grid_step));
  OracleResult result{TbpMechanism::full_information(T),
                      -std::numeric_limits<double>::infinity(), grid_step, 0};
  for (int n = 1; n <= T; ++n) {
    for (int i = 0; i <= steps; ++i) {
      const double q = std::min(1.0, i * grid_step);
      const TbpMechanism mech(n, q, T);
      if (!best_response_obeys(params, tbp_to_silent_path(mech))) continue;
      ++result.feasible_count;
      const double u = tbp_expected_utility(params, mech);
      if (u > result.best_utility) {
        result.best_utility = u;
        result.best_mechanism = mech;
      }
    }
  }
  return result;
}

// Earliest minimizer of the expected no-information cost, computed by
// summing the realized cost over the jump distribution. With c = 0 the
// detector waits out the horizon.
inline int brute_force_tau_no(const ModelParams& params) {
  const JumpDistribution dist(params);
  const int T = params.horizon;
  if (params.delay_cost == 0.0) return T + 1;
  int best = 0;
  double best_cost = std::numeric_limits<double>::infinity();
  for (int tau = 1; tau <= T + 1; ++tau) {
    double cost = 0.0;
    for (int theta = 1; theta <= T + 1; ++theta) {
      cost += dist.pmf(theta) * detector_cost(tau, theta, params.delay_cost);
    }
    if (cost < best_cost - kTauTieTolerance) {
      best_cost = cost;
      best = tau;
    }
  }
  return best;
}

// Minimum expected detector cost over every deterministic stopping rule on
// the reduced message tree (silent spine plus one-step declare branches).
// A rule is the first time it declares after a silent message, together with,
// for each earlier time, whether a declare message is followed (declare at
// once) or ignored (never declare). Each rule is priced by summing over the
// jump time.
inline double enumerate_stopping_rules(const ModelParams& params,
                                       const SilentPathPolicy& policy) {
  check_policy(params, policy);
  require_revealing_declare(policy);
  const int T = params.horizon;
  if (T > kMaxEnumerationHorizon) {
    throw ScaleError("enumerate_stopping_rules: T = " + std::to_string(T) + " exceeds " +
                     std::to_string(kMaxEnumerationHorizon));
  }
  const JumpDistribution dist(params);
  const double c = params.delay_cost;
  double best = std::numeric_limits<double>::infinity();
  for (int stop = 1; stop <= T + 1; ++stop) {
    const int decided = std::min(stop, T);  // times with a declare-branch choice
    for (unsigned follow = 0; follow < (1u << decided); ++follow) {
      double total = 0.0;
      for (int theta = 1; theta <= T + 1; ++theta) {
        double silent = 1.0;
        double cost = 0.0;
        for (int t = 1; t <= decided; ++t) {
          const double rho = t < theta ? policy.good_at(t) : policy.bad_at(t);
          const bool obeys_declare = (follow >> (t - 1)) & 1u;
          cost += silent * (1.0 - rho) *
                  detector_cost(obeys_declare ? t : T + 1, theta, c);
          silent *= rho;
        }
        cost += silent * detector_cost(stop, theta, c);
        total += dist.pmf(theta) * cost;
      }
      best = std::min(best, total);
    }
  }
  return best;
}

}  // namespace disclosure

#endif  // DISCLOSURE_ORACLE_HPP_
