#ifndef DISCLOSURE_BENCHMARKS_HPP_
#define DISCLOSURE_BENCHMARKS_HPP_

// Reference mechanisms the optimal one is compared against: no information,
// full information, and the best static (time-invariant) recommendation rule.

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "disclosure/model.hpp"
#include "disclosure/numerics.hpp"
#include "disclosure/solver.hpp"

namespace disclosure {

inline double no_info_utility(const ModelParams& params) {
  return static_cast<double>(tau_no(params) - 1);
}

// sum_{t=1}^{T} mu (1-q)^(t-1); the sum form is used near q = 0.
inline double full_info_utility(const ModelParams& params) {
  params.validate();
  const double mu = params.prior_good;
  const double q = params.hazard;
  const int T = params.horizon;
  if (q < 1e-12) {
    double total = 0.0;
    for (int t = 1; t <= T; ++t) total += mu * std::pow(1.0 - q, t - 1);
    return total;
  }
  return mu * one_minus_pow(q, T) / q;
}

namespace detail {

// N_l = P(s_l = b, silent through l) under the static rule, for l = 1..T
// (index l - 1), summed literally.
inline std::vector<double> static_bad_silent_mass(const ModelParams& params, double rho) {
  const double mu = params.prior_good;
  const double q = params.hazard;
  const int T = params.horizon;
  std::vector<double> mass(T);
  for (int l = 1; l <= T; ++l) {
    double n = (1.0 - mu) * std::pow(rho, l);
    for (int jump = 1; jump <= l - 1; ++jump) {
      n += mu * std::pow(1.0 - q, jump - 1) * q * std::pow(rho, l - jump);
    }
    mass[l - 1] = n;
  }
  return mass;
}

inline std::optional<double> static_slack_from_mass(const ModelParams& params,
                                                    const std::vector<double>& mass, int t) {
  const double good = params.prior_good * std::pow(1.0 - params.hazard, t - 1);
  const double denom = good + mass[t - 1];
  if (denom <= 0.0) return std::nullopt;
  double waiting = 0.0;
  for (int l = t; l <= params.horizon; ++l) waiting += mass[l - 1];
  return good / denom - params.delay_cost * waiting / denom;
}

}  // namespace detail

// Obedience slack at time t of the static rule (silent always when good,
// silent with probability rho_b when bad): declaring cost minus the cost of
// obeying from t on, both conditional on an all-silent history. nullopt when
// that history has probability zero (the constraint is vacuous).
inline std::optional<double> static_obedience_slack(const ModelParams& params, double rho_b,
                                                    int t) {
  params.validate();
  if (!(rho_b >= 0.0 && rho_b <= 1.0)) throw ParameterError("rho_b", "rho_b outside [0, 1]");
  if (t < 1 || t > params.horizon) throw IndexError("static_obedience_slack: t outside [1, T]");
  return detail::static_slack_from_mass(params, detail::static_bad_silent_mass(params, rho_b), t);
}

inline bool static_is_obedient(const ModelParams& params, double rho_b) {
  const auto mass = detail::static_bad_silent_mass(params, rho_b);
  for (int t = 1; t <= params.horizon; ++t) {
    const auto slack = detail::static_slack_from_mass(params, mass, t);
    if (slack && *slack < 0.0) return false;
  }
  return true;
}

inline constexpr double kStaticScanStep = 1e-2;
inline constexpr double kStaticBisectionTol = 1e-9;

// Largest rho_b in [0, 1] passing every static obedience constraint: a coarse
// scan locates the last feasible grid point, bisection refines the boundary
// just above it. The feasible set is not assumed to be an interval.
inline double best_static_rho(const ModelParams& params) {
  params.validate();
  if (params.prior_good == 0.0) return 0.0;
  if (params.delay_cost == 0.0) return 1.0;
  const int steps = static_cast<int>(std::lround(1.0 / kStaticScanStep));
  int last_feasible = -1;
  for (int i = 0; i <= steps; ++i) {
    if (static_is_obedient(params, i * kStaticScanStep)) last_feasible = i;
  }
  if (last_feasible == steps) return 1.0;
  if (last_feasible < 0) return 0.0;  // not expected: rho_b = 0 is obedient when mu > 0
  const auto [inside, outside] = bisect_boundary(
      [&](double rho) { return static_is_obedient(params, rho); },
      last_feasible * kStaticScanStep, (last_feasible + 1) * kStaticScanStep,
      kStaticBisectionTol);
  (void)outside;
  return inside;
}

inline double static_utility(const ModelParams& params, double rho_hat) {
  params.validate();
  if (!(rho_hat >= 0.0 && rho_hat <= 1.0)) {
    throw ParameterError("rho_hat", "rho_hat outside [0, 1]");
  }
  const double mu = params.prior_good;
  const double q = params.hazard;
  const int T = params.horizon;
  double total = 0.0;
  for (int t = 1; t <= T; ++t) {
    double term = mu * std::pow(1.0 - q, t - 1) + (1.0 - mu) * std::pow(rho_hat, t);
    for (int jump = 2; jump <= t; ++jump) {
      term += mu * std::pow(1.0 - q, jump - 2) * q * std::pow(rho_hat, t - jump + 1);
    }
    total += term;
  }
  return total;
}

struct BenchmarkSuite {
  double no_info_utility = 0.0;
  double full_info_utility = 0.0;
  double static_rho_hat = 0.0;
  double static_utility = 0.0;

  double best() const {
    return std::max({no_info_utility, full_info_utility, static_utility});
  }
};

inline BenchmarkSuite compute_benchmarks(const ModelParams& params) {
  BenchmarkSuite suite;
  suite.no_info_utility = no_info_utility(params);
  suite.full_info_utility = full_info_utility(params);
  suite.static_rho_hat = best_static_rho(params);
  suite.static_utility = static_utility(params, suite.static_rho_hat);
  return suite;
}

}  // namespace disclosure

#endif  // DISCLOSURE_BENCHMARKS_HPP_
