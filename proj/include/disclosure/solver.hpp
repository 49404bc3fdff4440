#ifndef DISCLOSURE_SOLVER_HPP_
#define DISCLOSURE_SOLVER_HPP_

// Optimal time-based prioritized mechanism.
//
// For a fixed threshold n_p, the largest admissible q_np is the minimum over
// t <= n_p of the per-constraint cap. The optimal mechanism is the first
// threshold whose cap drops below 1. When n_p reaches the detector's
// no-information stopping time, that time is always the tightest constraint,
// so the fast variant evaluates a single cap per threshold from there on.

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "disclosure/mechanisms.hpp"
#include "disclosure/model.hpp"
#include "disclosure/numerics.hpp"

namespace disclosure {

// Expected detector cost of declaring at tau (tau = T+1: never) when the
// principal reveals nothing.
inline double no_info_expected_cost(const ModelParams& params, int tau) {
  const int T = params.horizon;
  if (tau < 1 || tau > T + 1) {
    throw IndexError("no_info_expected_cost: tau = " + std::to_string(tau) +
                     " outside [1, T+1]");
  }
  const double mu = params.prior_good;
  const double q = params.hazard;
  const double c = params.delay_cost;
  const int waited = tau - 1;
  // sum_{t=1}^{waited} P(theta <= t)
  double waited_bad = 0.0;
  if (q < 1e-12) {
    for (int t = 1; t <= waited; ++t) waited_bad += 1.0 - mu * std::pow(1.0 - q, t - 1);
  } else {
    waited_bad = waited - mu * one_minus_pow(q, waited) / q;
  }
  const double false_alarm = tau <= T ? mu * std::pow(1.0 - q, tau - 1) : 0.0;
  return false_alarm + c * waited_bad;
}

// Earliest minimizer of the no-information cost over {1, ..., T+1}. With
// c = 0 waiting is free and the detector never declares.

inline int tau_no(const ModelParams& params) {
  params.validate();
  const int T = params.horizon;
  if (params.delay_cost == 0.0) return T + 1;
  int best = 1;
  double best_cost = no_info_expected_cost(params, 1);
  for (int tau = 2; tau <= T + 1; ++tau) {
    const double cost = no_info_expected_cost(params, tau);
    if (cost < best_cost - kTauTieTolerance) {
      best_cost = cost;
      best = tau;
    }
  }
  return best;
}

namespace detail {

// Survival and cumulative-cdf tables shared by the per-constraint caps.
struct CapTables {
  explicit CapTables(const ModelParams& params)
      : delay_cost(params.delay_cost),
        survival(params.horizon + 2),
        cdf(params.horizon + 2),
        cum_cdf(params.horizon + 2) {
    for (int t = 0; t <= params.horizon + 1; ++t) {
      survival[t] = disclosure::survival(params, t);
      cdf[t] = 1.0 - survival[t];
    }
    cum_cdf[0] = 0.0;
    for (int t = 1; t <= params.horizon + 1; ++t) cum_cdf[t] = cum_cdf[t - 1] + cdf[t];
  }

  // Cap on q_np from the time-t constraint; nullopt when it is not defined
  // (c = 0 or P(theta <= n_p) = 0: the constraint never binds).
  std::optional<double> cap(int threshold, int t) const {
    const double bad_by_threshold = cdf[threshold];
    if (delay_cost == 0.0 || bad_by_threshold <= 0.0) return std::nullopt;
    const double between = cum_cdf[threshold - 1] - cum_cdf[t - 1];
    return (survival[t] / delay_cost - between) / bad_by_threshold;
  }

  double delay_cost;
  std::vector<double> survival;
  std::vector<double> cdf;
  std::vector<double> cum_cdf;  // cum_cdf[k] = sum_{l=1}^{k} P(theta <= l)
};

}  // namespace detail

// Largest q_np that, with threshold n_p, satisfies the obedience constraint of
// time t. Not clamped to [0, 1].
inline std::optional<double> q_cap(const ModelParams& params, int threshold, int t) {
  params.validate();
  if (threshold < 1 || threshold > params.horizon || t < 1 || t > threshold) {
    throw IndexError("q_cap: need 1 <= t <= n_p <= T");
  }
  return detail::CapTables(params).cap(threshold, t);
}

struct SolveResult {
  TbpMechanism mechanism;
  double optimal_utility;
  int tau_no;
  std::optional<int> binding_constraint_time;

  friend bool operator==(const SolveResult&, const SolveResult&) = default;
};

namespace detail {

inline constexpr double kBreakMargin = 1e-12;

template <typename CapForThreshold>
SolveResult run_threshold_search(const ModelParams& params, int no_info_time,
                                 CapForThreshold&& cap_for) {
  const int T = params.horizon;
  auto finish = [&](TbpMechanism mech, std::optional<int> binding) {
    const double u = tbp_expected_utility(params, mech);
    return SolveResult{mech, u, no_info_time, binding};
  };
  if (params.delay_cost == 0.0) return finish(TbpMechanism::no_information(T), std::nullopt);

  for (int n = 1; n <= T; ++n) {
    // (cap, argmin t); cap is +inf when no constraint binds at this threshold.
    const auto [cap, argmin] = cap_for(n);
    if (cap < 1.0 - kBreakMargin) {
      return finish(TbpMechanism(n, std::max(cap, 0.0), T), argmin);
    }
  }
  return finish(TbpMechanism::no_information(T), std::nullopt);
}

}  // namespace detail

// Iterates thresholds, taking the full minimum over constraints at each one.
inline SolveResult algorithm1(const ModelParams& params) {
  params.validate();
  const detail::CapTables tables(params);
  return detail::run_threshold_search(params, tau_no(params), [&](int n) {
    double best = std::numeric_limits<double>::infinity();
    int argmin = 0;
    for (int t = 1; t <= n; ++t) {
      const auto cap = tables.cap(n, t);
      if (!cap) break;
      if (*cap < best) {
        best = *cap;
        argmin = t;
      }
    }
    return std::pair<double, std::optional<int>>(
        best, argmin > 0 ? std::optional<int>(argmin) : std::nullopt);
  });
}

// Same result, but once n_p >= tau_no only the tau_no constraint is evaluated.
inline SolveResult algorithm1_fast(const ModelParams& params) {
  params.validate();
  const detail::CapTables tables(params);
  const int no_info_time = tau_no(params);
  return detail::run_threshold_search(params, no_info_time, [&](int n) {
    double best = std::numeric_limits<double>::infinity();
    int argmin = 0;
    if (n >= no_info_time) {
      if (const auto cap = tables.cap(n, no_info_time)) {
        best = *cap;
        argmin = no_info_time;
      }
    } else {
      for (int t = 1; t <= n; ++t) {
        const auto cap = tables.cap(n, t);
        if (!cap) break;
        if (*cap < best) {
          best = *cap;
          argmin = t;
        }
      }
    }
    return std::pair<double, std::optional<int>>(
        best, argmin > 0 ? std::optional<int>(argmin) : std::nullopt);
  });
}

}  // namespace disclosure

#endif  // DISCLOSURE_SOLVER_HPP_
