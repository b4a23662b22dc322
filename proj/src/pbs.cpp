#include "mediamod/pbs.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include <fmt/format.h>

#include "mediamod/channel.hpp"
#include "mediamod/parallel.hpp"
#include "mediamod/photochem.hpp"

namespace mediamod {

std::uint64_t grid_index(double t, double dt) {
  if (!(dt > 0)) throw std::invalid_argument("grid_index: dt must be positive");
  if (!(t >= 0)) throw std::invalid_argument(fmt::format("grid_index: time {} is negative", t));
  const double ratio = t / dt;
  const double k = std::round(ratio);
  if (std::abs(ratio - k) > 1e-9 * std::max(1.0, ratio))
    throw std::invalid_argument(fmt::format("time {} s is not a multiple of dt = {} s", t, dt));
  return static_cast<std::uint64_t>(k);
}

Population init_population(const SystemConfig& cfg, RandomStream& placement) {
  Population pop(cfg.n_sys);
  for (auto& m : pop) m.z = cfg.duct.sys_length * placement.uniform();
  return pop;
}

std::size_t apply_modulation(Population& pop, const SystemConfig& cfg, int s, double p_switch,
                             RandomStream& placement) {
  if (!(p_switch >= 0 && p_switch <= 1))
    throw std::domain_error("apply_modulation: p_switch outside [0, 1]");
  if (s != 0 && s != 1) throw std::domain_error("apply_modulation: s must be 0 or 1");
  const double p = static_cast<double>(s) * p_switch;
  std::size_t switched = 0;
  for (auto& m : pop) {
    if (m.z < cfg.tx.z_a || m.z > cfg.tx.z_b) continue;
    if (placement.bernoulli(p) && m.state == MoleculeState::B) {
      m.state = MoleculeState::A;
      ++switched;
    }
  }
  return switched;
}

void step(std::span<Molecule> pop, const PropagationParams& params, double dt,
          RandomStream& stream_a, RandomStream& stream_b) {
  if (!(dt > 0)) throw std::domain_error("step: dt must be positive");
  const double drift = params.flow_v * dt;
  const double sd_a = std::sqrt(2.0 * params.diff_a * dt);
  const double sd_b = std::sqrt(2.0 * params.diff_b * dt);
  for (auto& m : pop) {
    if (m.state == MoleculeState::A)
      m.z += drift + sd_a * stream_a.normal();
    else
      m.z += drift + sd_b * stream_b.normal();
  }
}

std::size_t count_state_a_in_rx(std::span<const Molecule> pop, const SystemConfig& cfg) {
  return static_cast<std::size_t>(std::count_if(pop.begin(), pop.end(), [&](const Molecule& m) {
    return m.state == MoleculeState::A && m.z >= cfg.rx.z_a && m.z <= cfg.rx.z_b;
  }));
}

PbsEnsemble make_ensemble(const SystemConfig& cfg, std::vector<double> grid) {
  PbsEnsemble e;
  e.realizations = cfg.n_realizations;
  e.dt = cfg.pbs_dt;
  e.seed = cfg.seed;
  e.horizon = cfg.sampling_time();
  if (!grid.empty()) e.horizon = std::max(e.horizon, grid.back());
  e.record_grid = std::move(grid);
  return e;
}

EnsembleStats run_ensemble(const SystemConfig& cfg, int s, double p_switch,
                           const PbsEnsemble& ens) {
  if (ens.realizations < 1) throw std::invalid_argument("run_ensemble: realizations must be >= 1");
  if (!(ens.dt > 0)) throw std::invalid_argument("run_ensemble: dt must be positive");
  const double t_s = cfg.sampling_time();
  if (ens.horizon < t_s) throw std::invalid_argument("run_ensemble: horizon must be >= t_s");
  for (std::size_t i = 1; i < ens.record_grid.size(); ++i)
    if (!(ens.record_grid[i] > ens.record_grid[i - 1]))
      throw std::invalid_argument("run_ensemble: record grid must be strictly increasing");
  if (!ens.record_grid.empty() && ens.record_grid.back() > ens.horizon)
    throw std::invalid_argument("run_ensemble: record grid extends beyond the horizon");

  // Slots 0..G-1 follow the record grid; slot G is the sampling time.
  const std::size_t n_grid = ens.record_grid.size();
  std::vector<std::pair<std::uint64_t, std::size_t>> schedule;
  for (std::size_t g = 0; g < n_grid; ++g) schedule.emplace_back(grid_index(ens.record_grid[g], ens.dt), g);
  schedule.emplace_back(grid_index(t_s, ens.dt), n_grid);
  std::stable_sort(schedule.begin(), schedule.end());
  const std::uint64_t n_steps =
      std::max(schedule.back().first,
               static_cast<std::uint64_t>(std::ceil(ens.horizon / ens.dt - 1e-9)));

  const std::size_t n_slots = n_grid + 1;
  std::vector<std::uint32_t> counts(ens.realizations * n_slots, 0);
  std::vector<std::uint64_t> switched(ens.realizations, 0);
  const auto params = PropagationParams::from(cfg);

  parallel_for(ens.realizations, ens.threads, [&](std::uint64_t r) {
    RandomStream placement(ens.seed, r, StreamPurpose::Placement);
    RandomStream stream_a(ens.seed, r, StreamPurpose::PropagationA);
    RandomStream stream_b(ens.seed, r, StreamPurpose::PropagationB);

    Population pop = init_population(cfg, placement);
    switched[r] = apply_modulation(pop, cfg, s, p_switch, placement);
    if (!ens.step_state_b)
      std::erase_if(pop, [](const Molecule& m) { return m.state != MoleculeState::A; });

    std::uint32_t* row = counts.data() + r * n_slots;
    auto next = schedule.begin();
    auto record = [&](std::uint64_t k) {
      if (next == schedule.end() || next->first != k) return;
      const auto n = static_cast<std::uint32_t>(count_state_a_in_rx(pop, cfg));
      for (; next != schedule.end() && next->first == k; ++next) row[next->second] = n;
    };
    record(0);
    for (std::uint64_t k = 1; k <= n_steps; ++k) {
      step(pop, params, ens.dt, stream_a, stream_b);
      record(k);
    }
  });

  EnsembleStats stats;
  stats.sampling_time = t_s;
  const double n_real = static_cast<double>(ens.realizations);
  for (std::size_t g = 0; g < n_grid; ++g) {
    double sum = 0.0;
    for (std::uint64_t r = 0; r < ens.realizations; ++r) sum += counts[r * n_slots + g];
    const double mean = sum / n_real;
    double ss = 0.0;
    for (std::uint64_t r = 0; r < ens.realizations; ++r) {
      const double d = counts[r * n_slots + g] - mean;
      ss += d * d;
    }
    const double var = ens.realizations > 1 ? ss / (n_real - 1.0) : 0.0;
    stats.mean_cir.push_back({ens.record_grid[g], mean, std::sqrt(var / n_real)});
  }
  stats.n_rx.reserve(ens.realizations);
  std::map<std::uint64_t, std::uint64_t> histogram;
  for (std::uint64_t r = 0; r < ens.realizations; ++r) {
    const std::uint64_t n = counts[r * n_slots + n_grid];
    stats.n_rx.push_back(n);
    ++histogram[n];
  }
  for (const auto& [k, c] : histogram) stats.pmf_at_ts[k] = static_cast<double>(c) / n_real;
  stats.n_switched = std::move(switched);
  return stats;
}

EnsembleStats run_ensemble(const SystemConfig& cfg, int s, const PbsEnsemble& ensemble) {
  const double p_switch = experiment_switch_probability(cfg, make_switching_model(cfg));
  return run_ensemble(cfg, s, p_switch, ensemble);
}

}  // namespace mediamod
