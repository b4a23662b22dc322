#include "mediamod/channel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mediamod/quadrature.hpp"

namespace mediamod {
namespace {

// Antiderivative piece x erf(x/s) + s/sqrt(pi) exp(-x^2/s^2), with the s -> 0
// limit |x|.
double erf_primitive(double x, double s) {
  if (s == 0) return std::abs(x);
  const double r = x / s;
  return x * std::erf(r) + s * std::exp(-r * r) / std::sqrt(std::numbers::pi);
}

// Offsets (in standard deviations) where the composite rule gets refined.
constexpr std::array<double, 13> kSigmaCuts{-40, -16, -8, -4, -2, -1, 0, 1, 2, 4, 8, 16, 40};

}  // namespace

ChannelModel make_channel_model(const SystemConfig& cfg) {
  return ChannelModel{cfg.molecule.diff_a, cfg.flow_v, cfg.tx.z_a, cfg.tx.z_b, cfg.rx.z_a, cfg.rx.z_b};
}

double point_kernel(const ChannelModel& model, double t, double z_rx, double z_tx) {
  if (!(t > 0)) throw std::domain_error("point_kernel: t must be positive");
  const double four_dt = 4.0 * model.diff_a * t;
  const double dz = z_rx - z_tx - model.flow_v * t;
  return std::exp(-dz * dz / four_dt) / std::sqrt(std::numbers::pi * four_dt);
}

double hit_probability(const ChannelModel& model, double t) {
  const double vt = t > 0 ? model.flow_v * t : 0.0;
  const double s = t > 0 ? std::sqrt(4.0 * model.diff_a * t) : 0.0;
  const double a0 = model.z_b_rx - model.z_a_tx - vt;
  const double a1 = model.z_b_rx - model.z_b_tx - vt;
  const double a2 = model.z_a_rx - model.z_b_tx - vt;
  const double a3 = model.z_a_rx - model.z_a_tx - vt;
  const double sum = erf_primitive(a0, s) - erf_primitive(a1, s) + erf_primitive(a2, s) -
                     erf_primitive(a3, s);
  return std::clamp(sum / (2.0 * model.tx_length()), 0.0, 1.0);
}

double hit_probability_quadrature(const ChannelModel& model, double t, std::size_t nodes) {
  if (nodes < 16) throw std::domain_error("hit_probability_quadrature: nodes must be >= 16");
  if (!(t > 0)) return hit_probability(model, t);
  const double sigma = std::sqrt(2.0 * model.diff_a * t);
  const double vt = model.flow_v * t;

  // The outer integrand changes on the scale sigma where the start position
  // drifts onto either RX edge.
  std::vector<double> outer_cuts;
  for (double edge : {model.z_a_rx - vt, model.z_b_rx - vt})
    for (double c : kSigmaCuts) outer_cuts.push_back(edge + c * sigma);

  const double density = 1.0 / model.tx_length();
  std::vector<double> inner_cuts(kSigmaCuts.size());
  auto arrival = [&](double z_tx) {
    const double mean = z_tx + vt;
    for (std::size_t i = 0; i < kSigmaCuts.size(); ++i) inner_cuts[i] = mean + kSigmaCuts[i] * sigma;
    auto kernel = [&](double z_rx) { return point_kernel(model, t, z_rx, z_tx); };
    return quadrature::integrate(kernel, model.z_a_rx, model.z_b_rx, inner_cuts, nodes);
  };
  auto outer = [&](double z_tx) { return arrival(z_tx) * density; };
  return quadrature::integrate(outer, model.z_a_tx, model.z_b_tx, outer_cuts, nodes);
}

double experiment_switch_probability(const SystemConfig& cfg, const SwitchingModel& model) {
  return switch_probability(model, static_cast<double>(cfg.n_sys) * cfg.p_tx());
}

double expected_cir(const SystemConfig& cfg, const SwitchingModel& model, double t) {
  const double p_switch = experiment_switch_probability(cfg, model);
  return static_cast<double>(cfg.n_sys) * cfg.p_tx() * p_switch *
         hit_probability(make_channel_model(cfg), t);
}

}  // namespace mediamod
