#pragma once

#include "mediamod/config.hpp"
#include "mediamod/photochem.hpp"

namespace mediamod {

/// One-dimensional advection-diffusion channel between the TX and RX
/// intervals along the duct axis.
struct ChannelModel {
  double diff_a = 0;  // diffusion coefficient of state-A molecules [m^2/s]
  double flow_v = 0;  // [m/s]
  double z_a_tx = 0, z_b_tx = 0;
  double z_a_rx = 0, z_b_rx = 0;

  double tx_length() const { return z_b_tx - z_a_tx; }
  double rx_length() const { return z_b_rx - z_a_rx; }
};

ChannelModel make_channel_model(const SystemConfig& cfg);

/// Density (1/m) of finding at z_rx, after time t, a molecule that started at
/// z_tx: Gaussian with mean z_tx + v t and variance 2 D t.
/// Throws std::domain_error for t <= 0.
double point_kernel(const ChannelModel& model, double t, double z_rx, double z_tx);

/// Probability that a molecule switched uniformly inside the TX interval at
/// t = 0 lies inside the RX interval at time t. For t <= 0 returns the
/// t -> 0+ limit, the fraction of the TX interval overlapping the RX interval.
double hit_probability(const ChannelModel& model, double t);

/// Direct numerical double integral of point_kernel over the RX interval and
/// the uniform TX start position. Independent reference for hit_probability.
/// Requires nodes >= 16 (per dimension).
double hit_probability_quadrature(const ChannelModel& model, double t, std::size_t nodes = 2048);

/// The switching probability the statistical model uses for the whole
/// experiment, evaluated once at the expected TX population N_sys * p_TX.
double experiment_switch_probability(const SystemConfig& cfg, const SwitchingModel& model);

/// Expected number of state-A molecules inside the RX at time t after a
/// 1-symbol: N_sys p_TX p_switch h(t).
double expected_cir(const SystemConfig& cfg, const SwitchingModel& model, double t);

}  // namespace mediamod
