#ifndef DISCLOSURE_MECHANISMS_HPP_
#define DISCLOSURE_MECHANISMS_HPP_

// Disclosure mechanisms restricted to the only history that matters: the
// all-"keep silent" message path. Once a "declare" recommendation is sent the
// detector stops, so a mechanism is fully described by the probability of
// recommending silence at each time, in each state, along that path.

#include <cmath>
#include <string>
#include <vector>

#include "disclosure/errors.hpp"
#include "disclosure/model.hpp"

namespace disclosure {

inline constexpr double kObedienceTolerance = 1e-9;

// Per-time silence probabilities along the all-silent history.
// Entries are indexed by t - 1 for t = 1..T.
struct SilentPathPolicy {
  std::vector<double> good;  // P(m_t = k | s_t = g, all-k history)
  std::vector<double> bad;   // P(m_t = k | s_t = b, all-k history)

  int horizon() const noexcept { return static_cast<int>(good.size()); }
  double good_at(int t) const { return good.at(t - 1); }
  double bad_at(int t) const { return bad.at(t - 1); }

  void validate() const {
    if (good.empty()) throw ParameterError("policy", "policy has an empty horizon");
    if (good.size() != bad.size()) {
      throw ParameterError("policy", "rho_g and rho_b have different lengths");
    }
    for (std::size_t i = 0; i < good.size(); ++i) {
      if (!(good[i] >= 0.0 && good[i] <= 1.0) || !(bad[i] >= 0.0 && bad[i] <= 1.0)) {
        throw ParameterError("policy", "silence probability at t = " +
                                           std::to_string(i + 1) + " outside [0, 1]");
      }
    }
  }

  // Necessary for obedience: silence must be at least as likely when good.
  bool ordered() const {
    for (std::size_t i = 0; i < good.size(); ++i) {
      if (good[i] < bad[i]) return false;
    }
    return true;
  }

  bool good_always_silent() const {
    for (double g : good) {
      if (g != 1.0) return false;
    }
    return true;
  }

  static SilentPathPolicy full_information(int horizon) {
    return {std::vector<double>(horizon, 1.0), std::vector<double>(horizon, 0.0)};
  }
  static SilentPathPolicy no_information(int horizon) {
    return {std::vector<double>(horizon, 1.0), std::vector<double>(horizon, 1.0)};
  }
  static SilentPathPolicy stationary(int horizon, double bad_silence) {
    SilentPathPolicy p{std::vector<double>(horizon, 1.0),
                       std::vector<double>(horizon, bad_silence)};
    p.validate();
    return p;
  }

  friend bool operator==(const SilentPathPolicy&, const SilentPathPolicy&) = default;
};

// Time-based prioritized mechanism: silent in the bad state before the
// threshold, silent with probability bad_silence at the threshold, fully
// revealing after it. Always silent in the good state.
//
// (n, 1) and (n+1, 0) describe the same mechanism; construction maps the
// former onto the latter except at n = T.
class TbpMechanism {
 public:
  TbpMechanism(int threshold, double bad_silence, int horizon)
      : threshold_(threshold), bad_silence_(bad_silence), horizon_(horizon) {
    if (horizon < 1) throw ParameterError("T", "horizon must be positive");
    if (threshold < 1 || threshold > horizon) {
      throw ParameterError("n_p", "threshold " + std::to_string(threshold) +
                                      " outside [1, T]");
    }
    if (!(bad_silence >= 0.0 && bad_silence <= 1.0)) {
      throw ParameterError("q_np", "threshold silence probability outside [0, 1]");
    }
    if (bad_silence_ == 1.0 && threshold_ < horizon_) {
      ++threshold_;
      bad_silence_ = 0.0;
    }
  }

  int threshold() const noexcept { return threshold_; }
  double bad_silence() const noexcept { return bad_silence_; }
  int horizon() const noexcept { return horizon_; }

  // The position of the mechanism on the continuous scale n_p + q_np.
  double level() const noexcept { return threshold_ + bad_silence_; }

  static TbpMechanism full_information(int horizon) { return {1, 0.0, horizon}; }
  static TbpMechanism no_information(int horizon) { return {horizon, 1.0, horizon}; }

  friend bool operator==(const TbpMechanism&, const TbpMechanism&) = default;

 private:
  int threshold_;
  double bad_silence_;
  int horizon_;
};

// Bad-state silence probability on the all-silent path at time t.
inline double tbp_silence_prob(const TbpMechanism& mech, int t) {
  if (t < 1 || t > mech.horizon()) {
    throw IndexError("tbp_silence_prob: t = " + std::to_string(t) + " outside [1, T]");
  }
  if (t < mech.threshold()) return 1.0;
  if (t == mech.threshold()) return mech.bad_silence();
  return 0.0;
}

inline SilentPathPolicy tbp_to_silent_path(const TbpMechanism& mech) {
  const int T = mech.horizon();
  SilentPathPolicy policy{std::vector<double>(T, 1.0), std::vector<double>(T, 0.0)};
  for (int t = 1; t <= T; ++t) policy.bad[t - 1] = tbp_silence_prob(mech, t);
  return policy;
}

inline void check_horizon(const ModelParams& params, int horizon) {
  if (params.horizon != horizon) {
    throw ParameterError("T", "mechanism horizon " + std::to_string(horizon) +
                                  " does not match model horizon " +
                                  std::to_string(params.horizon));
  }
}

// Expected principal utility: n_p - 1 + P(theta <= n_p) q_np + sum_{t >= n_p} P(theta > t).
// Takes the pair as given, without canonicalization.
inline double tbp_expected_utility(const ModelParams& params, int threshold, double bad_silence) {
  if (threshold < 1 || threshold > params.horizon) {
    throw ParameterError("n_p", "threshold outside [1, T]");
  }
  double tail = 0.0;
  for (int t = threshold; t <= params.horizon; ++t) tail += survival(params, t);
  return (threshold - 1) + (1.0 - survival(params, threshold)) * bad_silence + tail;
}

inline double tbp_expected_utility(const ModelParams& params, const TbpMechanism& mech) {
  check_horizon(params, mech.horizon());
  return tbp_expected_utility(params, mech.threshold(), mech.bad_silence());
}

// Utility as a function of the level k = n_p + q_np in [1, T+1]; piecewise
// linear with kinks at the integers.
inline double tbp_utility_at_level(const ModelParams& params, double level) {
  const int T = params.horizon;
  if (!(level >= 1.0 && level <= T + 1.0)) {
    throw ParameterError("level", "level must lie in [1, T+1]");
  }
  int n = static_cast<int>(std::floor(level));
  double frac = level - n;
  if (n == T + 1) {
    n = T;
    frac = 1.0;
  }
  return tbp_expected_utility(params, TbpMechanism(n, frac, T));
}

struct ObedienceReport {
  bool satisfied = true;
  std::vector<double> slack;       // index t - 1, t = 1..n_p
  std::vector<int> binding_times;  // times with |slack| <= tolerance
};

// Obedience of a TBP mechanism: at each t <= n_p the cost of declaring,
// P(theta > t), must cover the cost of obeying until the threshold,
// c (sum_{l=t}^{n_p-1} P(theta <= l) + P(theta <= n_p) q_np).
inline ObedienceReport tbp_obedience(const ModelParams& params, const TbpMechanism& mech,
                                     double tolerance = kObedienceTolerance) {
  check_horizon(params, mech.horizon());
  const int n = mech.threshold();
  const double c = params.delay_cost;
  const double at_threshold = (1.0 - survival(params, n)) * mech.bad_silence();

  ObedienceReport report;
  report.slack.resize(n);
  for (int t = 1; t <= n; ++t) {
    double waiting = at_threshold;
    for (int l = t; l <= n - 1; ++l) waiting += 1.0 - survival(params, l);
    const double s = survival(params, t) - c * waiting;
    report.slack[t - 1] = s;
    if (s < -tolerance) report.satisfied = false;
    if (std::abs(s) <= tolerance) report.binding_times.push_back(t);
  }
  return report;
}

}  // namespace disclosure

#endif  // DISCLOSURE_MECHANISMS_HPP_
