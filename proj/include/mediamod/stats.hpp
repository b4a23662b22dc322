#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>

#include "mediamod/channel.hpp"
#include "mediamod/config.hpp"
#include "mediamod/photochem.hpp"
#include "mediamod/rng.hpp"

namespace mediamod {

/// Stages of the binomial reception chain. Every stage has N_sys trials; only
/// the success probability accumulates factors.
enum class Stage { AtTx, Switched, Received };

struct ReceptionDistribution {
  std::uint64_t trials = 0;
  double success_p = 0;
  Stage stage = Stage::Received;

  double mean() const { return static_cast<double>(trials) * success_p; }
  double variance() const { return mean() * (1.0 - success_p); }
};

/// s p_TX p_switch h(t_s), with p_switch from the configured on-power model.
double reception_probability(const SystemConfig& cfg, const SwitchingModel& model,
                             const ChannelModel& channel, int s);

/// Same product from explicit factors (used when p_TX and h are prescribed).
double reception_probability(double p_tx, double p_switch, double h, int s);

/// N_TX ~ B(N, p_TX), N_A ~ B(N, s p_TX p_switch), N_RX(t_s) ~ B(N, p_r).
std::array<ReceptionDistribution, 3> reception_chain(const SystemConfig& cfg,
                                                      const SwitchingModel& model,
                                                      const ChannelModel& channel, int s);

/// Binomial PMF via Loader's saddle-point form (Stirling remainders plus the
/// deviance bd0), evaluated in log space. Accurate to a few ulps relative for
/// N up to 1e15. Throws std::out_of_range for k > trials.
double nrx_pmf(const ReceptionDistribution& dist, std::uint64_t k);

/// Binomial variate. N <= 1e4: one Bernoulli draw per trial; larger N uses
/// std::binomial_distribution. p == 0 and p == 1 consume no draws.
std::uint64_t sample_nrx(const ReceptionDistribution& dist, RandomStream& stream);

struct TxNoise {
  double mean = 0;
  double variance = 0;
};

/// Statistics of n_TX = N_A - E{N_A}.
TxNoise tx_noise_stats(const SystemConfig& cfg, const SwitchingModel& model, int s);

/// 0.5 * sum_k |pmf(k) - freq(k)|, including the analytic mass beyond the
/// largest observed count.
double total_variation(const ReceptionDistribution& dist,
                       const std::map<std::uint64_t, double>& frequencies);

}  // namespace mediamod
