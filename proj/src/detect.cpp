#include "mediamod/detect.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "mediamod/parallel.hpp"

namespace mediamod {
namespace {

constexpr std::uint64_t kTrialsPerChunk = 1 << 16;

void check_detector(const DetectorConfig& det) {
  if (det.threshold < 1) throw std::domain_error("detector threshold must be >= 1");
}

}  // namespace

int detect(std::uint64_t n_rx, const DetectorConfig& det) {
  check_detector(det);
  return n_rx >= det.threshold ? 1 : 0;
}

double ber_analytic(std::uint64_t n_sys, double p_r, const DetectorConfig& det) {
  check_detector(det);
  if (!(p_r >= 0 && p_r <= 1)) throw std::domain_error("ber_analytic: p_r outside [0, 1]");
  if (det.threshold == 1) return 0.5 * std::exp(static_cast<double>(n_sys) * std::log1p(-p_r));
  const ReceptionDistribution dist{n_sys, p_r, Stage::Received};
  double miss = 0.0;
  for (std::uint64_t k = 0; k < det.threshold && k <= n_sys; ++k) miss += nrx_pmf(dist, k);
  return 0.5 * std::min(miss, 1.0);
}

void wilson_interval(std::uint64_t errors, std::uint64_t trials, double& low, double& high,
                     double z) {
  if (trials == 0) throw std::domain_error("wilson_interval: trials must be >= 1");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(errors) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  // The bounds are exactly 0 and 1 at the extremes; rounding would leave ~1e-19.
  low = errors == 0 ? 0.0 : std::max(0.0, center - half);
  high = errors == trials ? 1.0 : std::min(1.0, center + half);
}

BerEstimate ber_empirical(std::uint64_t n_sys, double p_r, std::uint64_t n_trials,
                          std::uint64_t seed, const DetectorConfig& det, unsigned threads) {
  check_detector(det);
  if (n_trials < 1) throw std::domain_error("ber_empirical: n_trials must be >= 1");
  if (!(p_r >= 0 && p_r <= 1)) throw std::domain_error("ber_empirical: p_r outside [0, 1]");

  const std::uint64_t chunks = (n_trials + kTrialsPerChunk - 1) / kTrialsPerChunk;
  std::vector<std::uint64_t> chunk_errors(chunks, 0);
  const ReceptionDistribution off{n_sys, 0.0, Stage::Received};
  const ReceptionDistribution on{n_sys, p_r, Stage::Received};

  parallel_for(chunks, threads, [&](std::uint64_t c) {
    RandomStream stream(seed, c, StreamPurpose::Detection);
    const std::uint64_t begin = c * kTrialsPerChunk;
    const std::uint64_t end = std::min(n_trials, begin + kTrialsPerChunk);
    std::uint64_t errors = 0;
    for (std::uint64_t i = begin; i < end; ++i) {
      const int s = stream.bernoulli(0.5) ? 1 : 0;
      const std::uint64_t n_rx = sample_nrx(s == 1 ? on : off, stream);
      errors += detect(n_rx, det) != s ? 1 : 0;
    }
    chunk_errors[c] = errors;
  });

  BerEstimate est;
  est.trials = n_trials;
  for (auto e : chunk_errors) est.errors += e;
  est.ber = static_cast<double>(est.errors) / static_cast<double>(n_trials);
  wilson_interval(est.errors, n_trials, est.ci_low, est.ci_high);
  return est;
}

}  // namespace mediamod
