#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "mediamod/config.hpp"
#include "mediamod/rng.hpp"

namespace mediamod {

enum class MoleculeState : std::uint8_t { A, B };

/// Axial position and photochromic state. Only B->A transitions exist, and
/// only during the modulation event at t = 0.
struct Molecule {
  double z = 0;
  MoleculeState state = MoleculeState::B;
};

using Population = std::vector<Molecule>;

struct PropagationParams {
  double flow_v = 0;
  double diff_a = 0;
  double diff_b = 0;

  static PropagationParams from(const SystemConfig& cfg) {
    return {cfg.flow_v, cfg.molecule.diff_a, cfg.molecule.diff_b};
  }
};

/// N_sys state-B molecules, z ~ U[0, L_sys), drawn in index order.
Population init_population(const SystemConfig& cfg, RandomStream& placement);

/// Switches each molecule with z in [z_a_tx, z_b_tx] to state A with
/// probability s * p_switch. One uniform is drawn per molecule inside the TX
/// regardless of s and p_switch. Returns the number switched.
std::size_t apply_modulation(Population& pop, const SystemConfig& cfg, int s, double p_switch,
                             RandomStream& placement);

/// Advances every molecule by v dt + sqrt(2 D dt) g, g ~ N(0, 1), with D by
/// state. State-A molecules draw from `stream_a` and state-B molecules from
/// `stream_b`, each in index order. No boundaries along z.
void step(std::span<Molecule> pop, const PropagationParams& params, double dt,
          RandomStream& stream_a, RandomStream& stream_b);

/// State-A molecules inside [z_a_rx, z_b_rx]. Non-destructive.
std::size_t count_state_a_in_rx(std::span<const Molecule> pop, const SystemConfig& cfg);

struct PbsEnsemble {
  std::uint64_t realizations = 10000;
  double dt = 1e-2;
  double horizon = 0;              // last simulated time; >= t_s
  std::uint64_t seed = 0;
  std::vector<double> record_grid; // multiples of dt, strictly increasing
  /// Also propagate state-B molecules. They never enter any count, so every
  /// output is identical either way; off, only switched molecules are stepped.
  bool step_state_b = false;
  unsigned threads = 0;            // 0 = hardware concurrency
};

/// Ensemble for `cfg` recording on `grid`; horizon = max(t_s, last grid time).
/// With an empty grid the walk stops at t_s (PMF/BER only).
PbsEnsemble make_ensemble(const SystemConfig& cfg, std::vector<double> grid = {});

struct CirSample {
  double t = 0;
  double mean = 0;
  double std_error = 0;  // sample standard deviation / sqrt(realizations)

  bool operator==(const CirSample&) const = default;
};

struct EnsembleStats {
  double sampling_time = 0;
  std::vector<CirSample> mean_cir;                // one per record_grid entry
  std::map<std::uint64_t, double> pmf_at_ts;      // relative frequencies of N_RX(t_s)
  std::vector<std::uint64_t> n_rx;                // per realization, at t_s
  std::vector<std::uint64_t> n_switched;          // per realization

  bool operator==(const EnsembleStats&) const = default;
};

/// Runs every realization r with streams (seed, r, Placement / PropagationA /
/// PropagationB): initialize, modulate at t = 0, walk to the horizon and count
/// at each recorded time. Aggregation is ordered by realization index, so the
/// result is bit-identical for any thread count.
///
/// Throws std::invalid_argument if t_s or a grid time is not a multiple of dt,
/// or if the ensemble parameters are inconsistent.
EnsembleStats run_ensemble(const SystemConfig& cfg, int s, double p_switch,
                           const PbsEnsemble& ensemble);

/// As above with p_switch from the configured on-power switching model.
EnsembleStats run_ensemble(const SystemConfig& cfg, int s, const PbsEnsemble& ensemble);

/// Index k with k * dt == t up to rounding; throws std::invalid_argument otherwise.
std::uint64_t grid_index(double t, double dt);

}  // namespace mediamod
