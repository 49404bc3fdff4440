#ifndef DISCLOSURE_TESTS_SUPPORT_HPP_
#define DISCLOSURE_TESTS_SUPPORT_HPP_

#include <random>

#include "disclosure/model.hpp"

namespace disclosure::test_support {

// Fixed-seed generator for property loops.
class ParamSampler {
 public:
  explicit ParamSampler(std::uint32_t seed) : rng_(seed) {}

  double unit() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  ModelParams params(int min_t, int max_t) {
    return ModelParams{unit(), unit(), integer(min_t, max_t), unit()};
  }

 private:
  std::mt19937 rng_;
};

}  // namespace disclosure::test_support

#endif  // DISCLOSURE_TESTS_SUPPORT_HPP_
