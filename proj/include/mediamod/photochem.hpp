#pragma once

#include "mediamod/config.hpp"

namespace mediamod {

/// Photochemistry of the B->A switching reaction inside the TX volume.
///
/// The state-B population obeys the Beer-Lambert rate equation
///   dN_B/dt = -phi * q * (1 - exp(-a N_B)),
/// with photon flux q, quantum yield phi and per-molecule absorption scale
/// a = ln(10) H eps / (V_TX N_Av).
struct SwitchingModel {
  double photon_energy = 0;     // [J]
  double photon_flux = 0;       // [photons/s]
  double absorption_scale = 0;  // a, dimensionless per molecule
  double quantum_yield = 0;
  double irradiation_time = 0;  // [s]

  /// Dimensionless light dose phi * a * q * t.
  double dose(double t) const { return quantum_yield * absorption_scale * photon_flux * t; }
};

/// h c / lambda. Throws std::domain_error for lambda <= 0.
double photon_energy(double wavelength);

/// P A / E_P. Throws std::domain_error for negative irradiance or nonpositive area.
double photon_flux(double irradiance, double area, double wavelength);

double absorption_scale(const SystemConfig& cfg);

/// Model for the configured TX at the given irradiance (W/m^2).
SwitchingModel make_switching_model(const SystemConfig& cfg, double irradiance);

/// Model at the configured on-power (the s = 1 symbol).
SwitchingModel make_switching_model(const SystemConfig& cfg);

/// State-B count at time t starting from n_tx state-B molecules.
/// Real-valued; stays within [0, n_tx] and does not overflow for a*n_tx far
/// beyond 50 nor lose precision for a*n_tx down to 1e-20.
double n_b_closed_form(const SwitchingModel& model, double n_tx, double t);

/// Probability that one of n_tx molecules switched B->A within the
/// irradiation time. Throws std::domain_error for n_tx <= 0.
double switch_probability(const SwitchingModel& model, double n_tx);

/// Fixed-step classical RK4 integration of the rate equation. Reference
/// solution for n_b_closed_form().
double integrate_beer_lambert_ode(const SwitchingModel& model, double n_tx, double t_end,
                                  std::size_t steps);

/// Right-hand side of the rate equation, dN_B/dt.
double n_b_rate(const SwitchingModel& model, double n_b);

/// Photon absorption rate dN_P/dt at state-B count n_b.
double photon_absorption_rate(const SwitchingModel& model, double n_b);

}  // namespace mediamod
