#pragma once

#include <cstdint>

#include "mediamod/stats.hpp"

namespace mediamod {

struct DetectorConfig {
  std::uint64_t threshold = 1;  // theta >= 1
};

/// 1 iff at least `threshold` state-A molecules are counted.
int detect(std::uint64_t n_rx, const DetectorConfig& det = {});

/// Error probability of the one-shot OOK link with equiprobable bits. The
/// 0-symbol never produces a state-A molecule, so only misses on the 1-symbol
/// contribute: 0.5 P(N_RX < theta), which is 0.5 (1 - p_r)^N_sys for theta = 1.
double ber_analytic(std::uint64_t n_sys, double p_r, const DetectorConfig& det = {});

struct BerEstimate {
  double ber = 0;
  double ci_low = 0;   // Wilson 95% interval
  double ci_high = 0;
  std::uint64_t errors = 0;
  std::uint64_t trials = 0;
};

/// Wilson score interval for `errors` successes out of `trials`.
void wilson_interval(std::uint64_t errors, std::uint64_t trials, double& low, double& high,
                     double z = 1.959963984540054);

/// Monte-Carlo BER: draws an equiprobable bit per trial, samples N_RX from
/// B(n_sys, s p_r) and applies detect(). Trials are processed in fixed-size
/// chunks, chunk c using stream (seed, c, Detection); the estimate is
/// independent of the worker count. Reusing a seed across p_r values gives
/// common random numbers: for n_sys <= 1e4 the estimate is monotone in p_r.
BerEstimate ber_empirical(std::uint64_t n_sys, double p_r, std::uint64_t n_trials,
                          std::uint64_t seed, const DetectorConfig& det = {},
                          unsigned threads = 0);

}  // namespace mediamod
