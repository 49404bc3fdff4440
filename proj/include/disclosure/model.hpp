#ifndef DISCLOSURE_MODEL_HPP_
#define DISCLOSURE_MODEL_HPP_

// Game primitives: a two-state Markov chain that starts good with some
// probability and jumps to an absorbing bad state with a constant per-step
// hazard, observed over a finite horizon.
//
// Time indices are 1-based. The jump time theta takes values in
// {1, ..., T+1}: theta = 1 means the chain starts bad, theta = T+1 means it
// never leaves the good state inside the horizon. The declaration time tau
// uses the same range; tau = T+1 means the detector never declares.

#include <cmath>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "disclosure/errors.hpp"

namespace disclosure {

// Expected costs of two declaration times within this margin count as tied;
// ties go to the earlier time.
inline constexpr double kTauTieTolerance = 1e-12;

struct ModelParams {
  double prior_good = 1.0;  // P(s_1 = g)
  double hazard = 0.0;      // per-step probability of jumping g -> b
  int horizon = 1;          // T
  double delay_cost = 0.0;  // c, cost per period of late detection

  // Throws ParameterError naming the first field out of its domain.
  void validate() const {
    auto fail = [](const char* field, double value, const char* domain) {
      std::ostringstream os;
      os << "parameter " << field << " = " << value << " is outside " << domain;
      throw ParameterError(field, os.str());
    };
    if (!(prior_good >= 0.0 && prior_good <= 1.0)) fail("mu", prior_good, "[0, 1]");
    if (!(hazard >= 0.0 && hazard <= 1.0)) fail("q", hazard, "[0, 1]");
    if (horizon < 1) fail("T", horizon, "{1, 2, ...}");
    if (!(delay_cost >= 0.0) || !std::isfinite(delay_cost)) fail("c", delay_cost, "[0, inf)");
  }

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

inline ModelParams make_params(double mu, double q, int horizon, double c) {
  ModelParams p{mu, q, horizon, c};
  p.validate();
  return p;
}

// P(theta > t) in closed form: 1 for t = 0, mu (1-q)^(t-1) for 1 <= t <= T,
// 0 for t = T+1.
inline double survival(const ModelParams& params, int t) {
  if (t < 0 || t > params.horizon + 1) {
    throw IndexError("survival: t = " + std::to_string(t) + " outside [0, T+1]");
  }
  if (t == 0) return 1.0;
  if (t == params.horizon + 1) return 0.0;
  return params.prior_good * std::pow(1.0 - params.hazard, t - 1);
}

// Law of the jump time. Masses are stored for theta = 1..T+1 together with
// the survival and cumulative tables every closed form in the library uses.
class JumpDistribution {
 public:
  explicit JumpDistribution(const ModelParams& params) : horizon_(params.horizon) {
    params.validate();
    const int T = params.horizon;
    const double mu = params.prior_good;
    const double q = params.hazard;
    pmf_.assign(T + 2, 0.0);
    pmf_[1] = 1.0 - mu;
    for (int theta = 2; theta <= T; ++theta) {
      pmf_[theta] = mu * std::pow(1.0 - q, theta - 2) * q;
    }
    // For T = 1 the two non-trivial cases coincide at theta = 2 = T+1.
    pmf_[T + 1] += mu * std::pow(1.0 - q, T - 1);

    survival_.assign(T + 2, 0.0);
    for (int t = 0; t <= T + 1; ++t) survival_[t] = disclosure::survival(params, t);
  }

  int horizon() const noexcept { return horizon_; }

  // P(theta = theta') for theta' in {1, ..., T+1}.
  double pmf(int theta) const {
    check(theta, 1);
    return pmf_[theta];
  }

  // P(theta > t), t in {0, ..., T+1}.
  double survival(int t) const {
    check(t, 0);
    return survival_[t];
  }

  // P(theta <= t), t in {0, ..., T+1}.
  double cdf(int t) const { return 1.0 - survival(t); }

  // Masses indexed by theta - 1.
  std::span<const double> masses() const noexcept {
    return std::span<const double>(pmf_).subspan(1);
  }

 private:
  void check(int t, int lo) const {
    if (t < lo || t > horizon_ + 1) {
      throw IndexError("jump distribution: index " + std::to_string(t) +
                       " outside [" + std::to_string(lo) + ", T+1]");
    }
  }

  int horizon_;
  std::vector<double> pmf_;       // index 0 unused
  std::vector<double> survival_;  // index t = 0..T+1
};

inline JumpDistribution jump_pmf(const ModelParams& params) {
  return JumpDistribution(params);
}

// Detector cost of declaring at tau when the jump happened at theta: a unit
// false-alarm charge, or c per period of delay.
inline double detector_cost(int tau, int theta, double c) {
  if (tau < 1 || theta < 1) throw IndexError("detector_cost: times are 1-based");
  if (tau < theta) return 1.0;
  return c * static_cast<double>(tau - theta);
}

inline double principal_utility(int tau) {
  if (tau < 1) throw IndexError("principal_utility: tau is 1-based");
  return static_cast<double>(tau - 1);
}

struct Episode {
  int theta = 1;
  int tau = 1;
  double detector_cost = 0.0;
  double principal_utility = 0.0;
};

inline Episode make_episode(int theta, int tau, double c) {
  return Episode{theta, tau, detector_cost(tau, theta, c), principal_utility(tau)};
}

}  // namespace disclosure

#endif  // DISCLOSURE_MODEL_HPP_
