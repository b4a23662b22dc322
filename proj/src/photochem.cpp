#include "mediamod/photochem.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mediamod {
namespace {

// log(exp(x) - 1) for x > 0 without overflow or cancellation.
double log_expm1(double x) {
  return x > 1.0 ? x + std::log1p(-std::exp(-x)) : std::log(std::expm1(x));
}

// log(1 + exp(y)).
double softplus(double y) {
  return y > 0 ? y + std::log1p(std::exp(-y)) : std::log1p(std::exp(y));
}

}  // namespace

double photon_energy(double wavelength) {
  if (!(wavelength > 0)) throw std::domain_error("photon_energy: wavelength must be positive");
  return PhysicalConstants::planck * PhysicalConstants::light_speed / wavelength;
}

double photon_flux(double irradiance, double area, double wavelength) {
  if (!(irradiance >= 0)) throw std::domain_error("photon_flux: irradiance must be non-negative");
  if (!(area > 0)) throw std::domain_error("photon_flux: area must be positive");
  return irradiance * area / photon_energy(wavelength);
}

double absorption_scale(const SystemConfig& cfg) {
  return std::numbers::ln10 * cfg.duct.height * cfg.molecule.molar_absorption /
         (cfg.tx_volume() * PhysicalConstants::avogadro);
}

SwitchingModel make_switching_model(const SystemConfig& cfg, double irradiance) {
  SwitchingModel m;
  m.photon_energy = photon_energy(cfg.tx.wavelength_ba);
  m.photon_flux = photon_flux(irradiance, cfg.tx_area(), cfg.tx.wavelength_ba);
  m.absorption_scale = absorption_scale(cfg);
  m.quantum_yield = cfg.molecule.quantum_yield;
  m.irradiation_time = cfg.tx.irradiation_time;
  return m;
}

SwitchingModel make_switching_model(const SystemConfig& cfg) {
  return make_switching_model(cfg, cfg.tx.irradiance_on);
}

double n_b_closed_form(const SwitchingModel& model, double n_tx, double t) {
  if (n_tx <= 0) return 0.0;
  const double k = model.dose(t);
  if (k == 0) return n_tx;
  // (1/a) log(1 + e^{-k} (e^{a n} - 1)), evaluated as softplus(log(e^{a n} - 1) - k) / a.
  const double x = n_tx * model.absorption_scale;
  const double n_b = softplus(log_expm1(x) - k) / model.absorption_scale;
  return std::clamp(n_b, 0.0, n_tx);
}

double switch_probability(const SwitchingModel& model, double n_tx) {
  if (!(n_tx > 0)) throw std::domain_error("switch_probability: n_tx must be positive");
  const double k = model.dose(model.irradiation_time);
  if (k == 0) return 0.0;
  // 1 - N_B(T)/n = -log1p(-(1 - e^{-k})(1 - e^{-x})) / x with x = a n; exact
  // rearrangement that keeps full relative precision for small doses.
  const double x = n_tx * model.absorption_scale;
  const double u = -std::expm1(-k);
  const double w = -std::expm1(-x);
  const double p = -std::log1p(-u * w) / x;
  return std::clamp(p, 0.0, 1.0);
}

double photon_absorption_rate(const SwitchingModel& model, double n_b) {
  return model.photon_flux * -std::expm1(-model.absorption_scale * n_b);
}

double n_b_rate(const SwitchingModel& model, double n_b) {
  return -model.quantum_yield * photon_absorption_rate(model, n_b);
}

double integrate_beer_lambert_ode(const SwitchingModel& model, double n_tx, double t_end,
                                  std::size_t steps) {
  if (steps == 0) throw std::domain_error("integrate_beer_lambert_ode: steps must be >= 1");
  const double h = t_end / static_cast<double>(steps);
  double y = n_tx;
  for (std::size_t i = 0; i < steps; ++i) {
    const double k1 = n_b_rate(model, y);
    const double k2 = n_b_rate(model, y + 0.5 * h * k1);
    const double k3 = n_b_rate(model, y + 0.5 * h * k2);
    const double k4 = n_b_rate(model, y + h * k3);
    y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return y;
}

}  // namespace mediamod
