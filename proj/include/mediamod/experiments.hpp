#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mediamod/config.hpp"
#include "mediamod/detect.hpp"

namespace mediamod::experiments {

/// `n` log-spaced points from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, std::size_t n);

/// lo, lo + step, ... up to hi (inclusive within rounding). Points are
/// computed as lo + i * step, never by accumulation.
std::vector<double> linear_grid(double lo, double hi, double step);

/// Throws std::invalid_argument unless the grid is non-empty and strictly increasing.
void require_increasing(const std::vector<double>& grid, std::string_view name);

/// `# mediamod <command>` followed by the resolved configuration, one
/// `# key = value` line per key.
void write_header(std::ostream& out, const SystemConfig& cfg, std::string_view command);

struct SwitchingCurveSpec {
  std::vector<double> powers = log_grid(1e3, 1e6, 25);  // W/m^2
  std::vector<double> n_tx = {1e2, 1e10, 1e14};
};

/// power_w_per_m2,n_tx,p_switch
void switching_curve(const SystemConfig& cfg, const SwitchingCurveSpec& spec, std::ostream& out);

struct CirSpec {
  std::vector<double> times = linear_grid(0.0, 40.0, 0.5);  // s
  bool pbs = false;
};

/// t_s,h_analytic,cir_analytic[,cir_pbs_mean,cir_pbs_stderr]
void cir(const SystemConfig& cfg, const CirSpec& spec, std::ostream& out);

struct PmfSpec {
  int bit = 1;
};

/// k,pmf_analytic,pmf_empirical then `# tv_distance = ...`. Returns the
/// total variation distance.
double pmf(const SystemConfig& cfg, const PmfSpec& spec, std::ostream& out);

struct BerSpec {
  std::vector<double> powers = log_grid(1e3, 1e6, 25);
  std::vector<double> n_sys = {10, 50, 100};
  /// Prescribed h(t_s) and p_TX; when unset, both are derived from the geometry.
  std::optional<double> h_ts = 0.999;
  std::optional<double> p_tx = 0.1;
  bool empirical = false;
  std::uint64_t trials = 1000000;
  DetectorConfig detector;
};

struct BerRow {
  double power = 0;
  std::uint64_t n_sys = 0;
  double p_switch = 0;
  double p_r = 0;
  double ber = 0;
  std::optional<BerEstimate> empirical;
};

/// Rows ordered by n_sys, then power.
std::vector<BerRow> ber_rows(const SystemConfig& cfg, const BerSpec& spec);

/// power_w_per_m2,n_sys,p_switch,p_r,ber_analytic[,ber_empirical,ci95_lo,ci95_hi]
void ber(const SystemConfig& cfg, const BerSpec& spec, std::ostream& out);

struct ValidationResult {
  bool static_ok = false;
  bool independence_ok = false;
  bool ok() const { return static_ok && independence_ok; }
};

/// Largest relative tolerated change of p_switch between one molecule and the
/// full population before molecules stop switching independently.
inline constexpr double kIndependenceTolerance = 0.01;

/// Human-readable report of the modeling checks and derived quantities.
ValidationResult validate(const SystemConfig& cfg, std::ostream& out);

}  // namespace mediamod::experiments
