#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mediamod {

/// CODATA 2018 exact values. Not configurable.
struct PhysicalConstants {
  static constexpr double planck = 6.62607015e-34;   // J s
  static constexpr double light_speed = 299792458.0; // m/s
  static constexpr double avogadro = 6.02214076e23;  // 1/mol
};

struct DuctGeometry {
  double height = 1e-3;     // H [m]
  double width = 1e-3;      // W [m]
  double sys_length = 0.5;  // L_sys [m]

  double volume() const { return width * height * sys_length; }
  bool operator==(const DuctGeometry&) const = default;
};

struct TxConfig {
  double z_a = 0.10;                 // [m]
  double z_b = 0.15;                 // [m]
  double irradiance_on = 1e3;        // P_in,TX,on [W/m^2]
  double irradiation_time = 5e-3;    // T_S,TX [s]
  double wavelength_ba = 365e-9;     // switching wavelength B->A [m]

  double length() const { return z_b - z_a; }
  double center() const { return 0.5 * (z_b + z_a); }
  bool operator==(const TxConfig&) const = default;
};

struct RxConfig {
  double z_a = 0.30;
  double z_b = 0.35;
  double wavelength_f_in = 515e-9;   // metadata
  double wavelength_f_out = 529e-9;  // metadata

  double length() const { return z_b - z_a; }
  double center() const { return 0.5 * (z_b + z_a); }
  bool operator==(const RxConfig&) const = default;
};

struct MoleculeParams {
  double diff_a = 1e-10;             // [m^2/s]
  double diff_b = 1e-10;             // [m^2/s]
  double molar_absorption = 8.3e3;   // epsilon [m^2/mol]
  double quantum_yield = 0.41;       // phi_B
  double wavelength_ab = 405e-9;     // eraser wavelength, metadata
  bool operator==(const MoleculeParams&) const = default;
};

/// Complete, validated experiment description. Immutable once returned by
/// load_config(); every member function is a pure derivation.
struct SystemConfig {
  DuctGeometry duct;
  TxConfig tx;
  RxConfig rx;
  MoleculeParams molecule;
  double flow_v = 0.01;              // [m/s]
  std::uint64_t n_sys = 1000;
  double pbs_dt = 1e-2;              // [s]
  std::uint64_t n_realizations = 10000;
  std::uint64_t seed = 20211014;
  double static_threshold = 0.01;    // ratio operationalizing "much shorter than"

  double tx_area() const { return tx.length() * duct.width; }
  double tx_volume() const { return duct.width * duct.height * tx.length(); }
  double sys_volume() const { return duct.volume(); }
  /// Probability that a uniformly placed molecule lies inside the TX volume.
  double p_tx() const { return tx_volume() / sys_volume(); }
  /// TX-to-RX center distance.
  double distance() const { return rx.center() - tx.center(); }
  /// Flow transit time between the centers; the RX samples here.
  double sampling_time() const { return distance() / flow_v; }

  bool operator==(const SystemConfig&) const = default;
};

class ConfigError : public std::runtime_error {
public:
  enum class Kind { Parse, UnknownKey, Invariant };

  ConfigError(Kind kind, std::string key, const std::string& what)
      : std::runtime_error(what), kind_(kind), key_(std::move(key)) {}

  Kind kind() const { return kind_; }
  const std::string& key() const { return key_; }

private:
  Kind kind_;
  std::string key_;
};

/// Parses a flat `key = value` document. Blank lines and `#` comments are
/// ignored; omitted keys keep their defaults. Throws ConfigError.
SystemConfig load_config(std::string_view text);

/// Applies `key=value` overrides on top of an existing configuration and
/// re-validates the result.
SystemConfig apply_overrides(SystemConfig cfg, const std::vector<std::string>& assignments);

SystemConfig load_config_file(const std::string& path);

/// Emits every key in a form load_config() parses back to an identical value.
std::string serialize(const SystemConfig& cfg);

/// Throws ConfigError(Invariant) naming the first violated predicate.
void validate(const SystemConfig& cfg);

std::vector<std::string> config_keys();

struct ValidityReport {
  double lhs = 0;    // diffusion + flow displacement during illumination [m]
  double rhs = 0;    // TX length [m]
  double ratio = 0;
  bool ok = false;
};

/// Checks that molecules barely move while the TX illuminates them:
/// sqrt(2 D_B T) + v T against l_TX.
ValidityReport validate_static_assumption(const SystemConfig& cfg);

}  // namespace mediamod
