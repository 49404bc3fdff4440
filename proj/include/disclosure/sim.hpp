#ifndef DISCLOSURE_SIM_HPP_
#define DISCLOSURE_SIM_HPP_

// Monte-Carlo play of the principal-detector interaction.
//
// Every episode draws from its own stream: a std::mt19937_64 seeded through
// std::seed_seq with the 32-bit halves of (master seed, episode index). Both
// the engine and the seed_seq algorithm are fully specified by the standard,
// so reports are reproducible across platforms and worker counts.

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "disclosure/detector.hpp"
#include "disclosure/mechanisms.hpp"
#include "disclosure/model.hpp"
#include "disclosure/parallel.hpp"

namespace disclosure {

inline constexpr const char* kGeneratorName =
    "mt19937_64 per episode, seed_seq{seed_lo, seed_hi, index_lo, index_hi}, "
    "uniform = (x >> 11) * 2^-53";

class EpisodeStream {
 public:
  EpisodeStream(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index),
                      static_cast<std::uint32_t>(index >> 32)};
    engine_.seed(seq);
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

enum class DetectorMode { kObedient, kBestResponse };

inline const char* to_string(DetectorMode mode) {
  return mode == DetectorMode::kObedient ? "obedient" : "dp_best_response";
}

// Inverse-cdf draw of the jump time from one uniform variate.
template <typename Stream>
int sample_theta(const JumpDistribution& dist, Stream& rng) {
  const double u = rng.uniform();
  double cumulative = 0.0;
  const int last = dist.horizon() + 1;
  for (int theta = 1; theta < last; ++theta) {
    cumulative += dist.pmf(theta);
    if (u < cumulative) return theta;
  }
  return last;
}

template <typename Stream>
int sample_theta(const ModelParams& params, Stream& rng) {
  return sample_theta(JumpDistribution(params), rng);
}

// Everything an episode needs, computed once per (params, policy, mode).
class EpisodeRunner {
 public:
  EpisodeRunner(const ModelParams& params, SilentPathPolicy policy, DetectorMode mode)
      : params_(params), dist_(params), policy_(std::move(policy)), mode_(mode) {
    check_policy(params_, policy_);
    if (mode_ == DetectorMode::kBestResponse) {
      // Throws UnsupportedPolicyError unless the good state is always silent.
      waits_ = solve_dp(params_, policy_).wait_is_optimal;
    }
  }

  template <typename Stream>
  Episode run(Stream& rng) const {
    const int T = params_.horizon;
    const int theta = sample_theta(dist_, rng);
    int tau = T + 1;
    for (int t = 1; t <= T; ++t) {
      const double rho = t < theta ? policy_.good_at(t) : policy_.bad_at(t);
      const bool silent = rng.uniform() < rho;
      if (!silent) {
        // Declare recommendations are followed in both modes; under the
        // best response they reveal the bad state.
        tau = t;
        break;
      }
      if (mode_ == DetectorMode::kBestResponse && !waits_[t - 1]) {
        tau = t;
        break;
      }
    }
    return make_episode(theta, tau, params_.delay_cost);
  }

  const ModelParams& params() const noexcept { return params_; }

 private:
  ModelParams params_;
  JumpDistribution dist_;
  SilentPathPolicy policy_;
  DetectorMode mode_;
  std::vector<bool> waits_;
};

template <typename Stream>
Episode run_episode(const ModelParams& params, const SilentPathPolicy& policy,
                    DetectorMode mode, Stream& rng) {
  return EpisodeRunner(params, policy, mode).run(rng);
}

struct SimConfig {
  std::int64_t n_episodes = 1;
  std::uint64_t seed = 0;
  DetectorMode detector_mode = DetectorMode::kObedient;
  unsigned workers = 1;  // 0 = hardware concurrency; never affects results
};

struct SimReport {
  std::int64_t episodes = 0;
  double mean_principal_utility = 0.0;
  std::optional<double> stderr_utility;  // nullopt for a single episode
  double mean_detector_cost = 0.0;
  std::optional<double> stderr_cost;
  double false_alarm_rate = 0.0;
  double mean_delay = 0.0;  // mean of max(tau - theta, 0) over all episodes
};

namespace detail {

inline std::pair<double, std::optional<double>> mean_and_stderr(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  double sum = 0.0;
  for (double x : xs) sum += x;
  const double mean = sum / n;
  if (xs.size() < 2) return {mean, std::nullopt};
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (n - 1.0)) / std::sqrt(n)};
}

}  // namespace detail

inline SimReport estimate(const ModelParams& params, const SilentPathPolicy& policy,
                          const SimConfig& config) {
  if (config.n_episodes < 1) throw ParameterError("episodes", "need at least one episode");
  const EpisodeRunner runner(params, policy, config.detector_mode);
  const auto n = static_cast<std::size_t>(config.n_episodes);
  std::vector<Episode> episodes(n);
  parallel_for(n, config.workers, [&](std::size_t i) {
    EpisodeStream rng(config.seed, i);
    episodes[i] = runner.run(rng);
  });

  std::vector<double> utility(n), cost(n);
  double false_alarms = 0.0;
  double delay = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Episode& e = episodes[i];
    utility[i] = e.principal_utility;
    cost[i] = e.detector_cost;
    if (e.tau < e.theta) false_alarms += 1.0;
    delay += std::max(0, e.tau - e.theta);
  }
  SimReport report;
  report.episodes = config.n_episodes;
  std::tie(report.mean_principal_utility, report.stderr_utility) = detail::mean_and_stderr(utility);
  std::tie(report.mean_detector_cost, report.stderr_cost) = detail::mean_and_stderr(cost);
  report.false_alarm_rate = false_alarms / static_cast<double>(n);
  report.mean_delay = delay / static_cast<double>(n);
  return report;
}

}  // namespace disclosure

#endif  // DISCLOSURE_SIM_HPP_
