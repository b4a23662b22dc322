#include "mediamod/stats.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace mediamod {
namespace {

constexpr std::uint64_t kBernoulliSamplingLimit = 10000;

// log(n!) - log(sqrt(2 pi n) (n/e)^n).
double stirlerr(double n) {
  constexpr double S0 = 1.0 / 12.0;
  constexpr double S1 = 1.0 / 360.0;
  constexpr double S2 = 1.0 / 1260.0;
  constexpr double S3 = 1.0 / 1680.0;
  constexpr double S4 = 1.0 / 1188.0;
  if (n <= 15.0) {
    const long double ln = n;
    const long double half_ln_2pi = 0.918938533204672741780329736405617639861L;
    return static_cast<double>(std::lgamma(ln + 1.0L) - (ln + 0.5L) * std::log(ln) + ln - half_ln_2pi);
  }
  const double nn = n * n;
  if (n > 500) return (S0 - S1 / nn) / n;
  if (n > 80) return (S0 - (S1 - S2 / nn) / nn) / n;
  if (n > 35) return (S0 - (S1 - (S2 - S3 / nn) / nn) / nn) / n;
  return (S0 - (S1 - (S2 - (S3 - S4 / nn) / nn) / nn) / nn) / n;
}

// Deviance x log(x / np) + np - x, series form when x is close to np.
double bd0(double x, double np) {
  if (std::abs(x - np) < 0.1 * (x + np)) {
    double v = (x - np) / (x + np);
    double s = (x - np) * v;
    double ej = 2.0 * x * v;
    v *= v;
    for (int j = 1; j < 1000; ++j) {
      ej *= v;
      const double s1 = s + ej / (2 * j + 1);
      if (s1 == s) return s1;
      s = s1;
    }
  }
  return x * std::log(x / np) + np - x;
}

double binomial_pmf(double x, double n, double p) {
  const double q = 1.0 - p;
  if (p == 0) return x == 0 ? 1.0 : 0.0;
  if (q == 0) return x == n ? 1.0 : 0.0;
  if (x == 0) return std::exp(n * std::log1p(-p));
  if (x == n) return std::exp(n * std::log(p));
  const double lc = stirlerr(n) - stirlerr(x) - stirlerr(n - x) - bd0(x, n * p) - bd0(n - x, n * q);
  const double lf = std::log(2.0 * std::numbers::pi) + std::log(x) + std::log1p(-x / n);
  return std::exp(lc - 0.5 * lf);
}

}  // namespace

double reception_probability(double p_tx, double p_switch, double h, int s) {
  if (s != 0 && s != 1) throw std::domain_error("reception_probability: s must be 0 or 1");
  return static_cast<double>(s) * p_tx * p_switch * h;
}

double reception_probability(const SystemConfig& cfg, const SwitchingModel& model,
                             const ChannelModel& channel, int s) {
  return reception_probability(cfg.p_tx(), experiment_switch_probability(cfg, model),
                               hit_probability(channel, cfg.sampling_time()), s);
}

std::array<ReceptionDistribution, 3> reception_chain(const SystemConfig& cfg,
                                                      const SwitchingModel& model,
                                                      const ChannelModel& channel, int s) {
  if (s != 0 && s != 1) throw std::domain_error("reception_chain: s must be 0 or 1");
  const double p_tx = cfg.p_tx();
  const double p_a = static_cast<double>(s) * p_tx * experiment_switch_probability(cfg, model);
  return {ReceptionDistribution{cfg.n_sys, p_tx, Stage::AtTx},
          ReceptionDistribution{cfg.n_sys, p_a, Stage::Switched},
          ReceptionDistribution{cfg.n_sys, reception_probability(cfg, model, channel, s),
                                Stage::Received}};
}

double nrx_pmf(const ReceptionDistribution& dist, std::uint64_t k) {
  if (k > dist.trials) throw std::out_of_range("nrx_pmf: k exceeds number of trials");
  if (!(dist.success_p >= 0 && dist.success_p <= 1))
    throw std::domain_error("nrx_pmf: success probability outside [0, 1]");
  return binomial_pmf(static_cast<double>(k), static_cast<double>(dist.trials), dist.success_p);
}

std::uint64_t sample_nrx(const ReceptionDistribution& dist, RandomStream& stream) {
  const double p = dist.success_p;
  if (p <= 0) return 0;
  if (p >= 1) return dist.trials;
  if (dist.trials <= kBernoulliSamplingLimit) {
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < dist.trials; ++i) hits += stream.bernoulli(p) ? 1 : 0;
    return hits;
  }
  std::binomial_distribution<std::uint64_t> binom(dist.trials, p);
  return binom(stream.engine());
}

TxNoise tx_noise_stats(const SystemConfig& cfg, const SwitchingModel& model, int s) {
  if (s != 0 && s != 1) throw std::domain_error("tx_noise_stats: s must be 0 or 1");
  const double q = static_cast<double>(s) * cfg.p_tx() * experiment_switch_probability(cfg, model);
  return TxNoise{0.0, static_cast<double>(cfg.n_sys) * q * (1.0 - q)};
}

double total_variation(const ReceptionDistribution& dist,
                       const std::map<std::uint64_t, double>& frequencies) {
  std::uint64_t k_max = frequencies.empty() ? 0 : frequencies.rbegin()->first;
  const double sd = std::sqrt(dist.variance());
  const auto analytic_reach = static_cast<std::uint64_t>(dist.mean() + 40.0 * sd + 40.0);
  k_max = std::min(dist.trials, std::max(k_max, analytic_reach));

  double distance = 0.0;
  double covered = 0.0;
  for (std::uint64_t k = 0; k <= k_max; ++k) {
    const double p = nrx_pmf(dist, k);
    const auto it = frequencies.find(k);
    const double f = it == frequencies.end() ? 0.0 : it->second;
    distance += std::abs(p - f);
    covered += p;
  }
  distance += std::max(0.0, 1.0 - covered);
  return 0.5 * distance;
}

}  // namespace mediamod
