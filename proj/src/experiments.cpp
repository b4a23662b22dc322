#include "mediamod/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "mediamod/channel.hpp"
#include "mediamod/pbs.hpp"
#include "mediamod/photochem.hpp"
#include "mediamod/stats.hpp"

namespace mediamod::experiments {
namespace {

std::uint64_t as_count(double x, std::string_view name) {
  if (!(x >= 1) || x != std::floor(x) || x > 9007199254740992.0)
    throw std::invalid_argument(fmt::format("{}: {} is not a positive integer", name, x));
  return static_cast<std::uint64_t>(x);
}

}  // namespace

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  if (!(lo > 0 && hi >= lo) || n == 0)
    throw std::invalid_argument("log_grid: need 0 < lo <= hi and n >= 1");
  if (n == 1) return {lo};
  std::vector<double> grid(n);
  const double l0 = std::log10(lo), l1 = std::log10(hi);
  for (std::size_t i = 0; i < n; ++i)
    grid[i] = std::pow(10.0, l0 + (l1 - l0) * static_cast<double>(i) / static_cast<double>(n - 1));
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

std::vector<double> linear_grid(double lo, double hi, double step) {
  if (!(step > 0) || !(hi >= lo)) throw std::invalid_argument("linear_grid: need step > 0, hi >= lo");
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) grid[i] = lo + static_cast<double>(i) * step;
  return grid;
}

void require_increasing(const std::vector<double>& grid, std::string_view name) {
  if (grid.empty()) throw std::invalid_argument(fmt::format("{} grid is empty", name));
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw std::invalid_argument(fmt::format("{} grid is not strictly increasing", name));
}

void write_header(std::ostream& out, const SystemConfig& cfg, std::string_view command) {
  fmt::print(out, "# mediamod {}\n", command);
  std::istringstream lines(serialize(cfg));
  for (std::string line; std::getline(lines, line);) fmt::print(out, "# {}\n", line);
}

void switching_curve(const SystemConfig& cfg, const SwitchingCurveSpec& spec, std::ostream& out) {
  require_increasing(spec.powers, "power");
  if (spec.n_tx.empty()) throw std::invalid_argument("n_tx list is empty");
  write_header(out, cfg, "switching-curve");
  fmt::print(out, "power_w_per_m2,n_tx,p_switch\n");
  for (double n_tx : spec.n_tx) {
    for (double power : spec.powers) {
      const auto model = make_switching_model(cfg, power);
      fmt::print(out, "{},{},{}\n", power, n_tx, switch_probability(model, n_tx));
    }
  }
}

void cir(const SystemConfig& cfg, const CirSpec& spec, std::ostream& out) {
  require_increasing(spec.times, "time");
  const auto model = make_switching_model(cfg);
  const auto channel = make_channel_model(cfg);

  std::optional<EnsembleStats> stats;
  if (spec.pbs) stats = run_ensemble(cfg, 1, make_ensemble(cfg, spec.times));

  write_header(out, cfg, spec.pbs ? "cir --pbs" : "cir");
  fmt::print(out, "t_s,h_analytic,cir_analytic{}\n", spec.pbs ? ",cir_pbs_mean,cir_pbs_stderr" : "");
  for (std::size_t i = 0; i < spec.times.size(); ++i) {
    const double t = spec.times[i];
    fmt::print(out, "{},{},{}", t, hit_probability(channel, t), expected_cir(cfg, model, t));
    if (stats) fmt::print(out, ",{},{}", stats->mean_cir[i].mean, stats->mean_cir[i].std_error);
    fmt::print(out, "\n");
  }
}

double pmf(const SystemConfig& cfg, const PmfSpec& spec, std::ostream& out) {
  const auto model = make_switching_model(cfg);
  const auto channel = make_channel_model(cfg);
  const ReceptionDistribution dist{cfg.n_sys, reception_probability(cfg, model, channel, spec.bit),
                                   Stage::Received};
  const auto stats = run_ensemble(cfg, spec.bit, make_ensemble(cfg));

  // Rows cover every observed count and the analytic bulk.
  auto k_max = static_cast<std::uint64_t>(dist.mean());
  while (k_max < dist.trials && nrx_pmf(dist, k_max + 1) >= 1e-12) ++k_max;
  if (!stats.pmf_at_ts.empty()) k_max = std::max(k_max, stats.pmf_at_ts.rbegin()->first);

  write_header(out, cfg, fmt::format("pmf --bit {}", spec.bit));
  fmt::print(out, "k,pmf_analytic,pmf_empirical\n");
  for (std::uint64_t k = 0; k <= k_max; ++k) {
    const auto it = stats.pmf_at_ts.find(k);
    fmt::print(out, "{},{},{}\n", k, nrx_pmf(dist, k), it == stats.pmf_at_ts.end() ? 0.0 : it->second);
  }
  const double tv = total_variation(dist, stats.pmf_at_ts);
  fmt::print(out, "# tv_distance = {}\n", tv);
  return tv;
}

std::vector<BerRow> ber_rows(const SystemConfig& cfg, const BerSpec& spec) {
  require_increasing(spec.powers, "power");
  if (spec.n_sys.empty()) throw std::invalid_argument("n_sys list is empty");
  const double h = spec.h_ts ? *spec.h_ts : hit_probability(make_channel_model(cfg), cfg.sampling_time());
  const double p_tx = spec.p_tx ? *spec.p_tx : cfg.p_tx();
  if (!(h >= 0 && h <= 1) || !(p_tx > 0 && p_tx <= 1))
    throw std::invalid_argument("ber: h and p_tx must be probabilities");

  std::vector<BerRow> rows;
  for (double n_value : spec.n_sys) {
    const std::uint64_t n_sys = as_count(n_value, "n_sys");
    for (double power : spec.powers) {
      BerRow row;
      row.power = power;
      row.n_sys = n_sys;
      const auto model = make_switching_model(cfg, power);
      row.p_switch = switch_probability(model, static_cast<double>(n_sys) * p_tx);
      row.p_r = reception_probability(p_tx, row.p_switch, h, 1);
      row.ber = ber_analytic(n_sys, row.p_r, spec.detector);
      if (spec.empirical) row.empirical = ber_empirical(n_sys, row.p_r, spec.trials, cfg.seed, spec.detector);
      rows.push_back(row);
    }
  }
  return rows;
}

void ber(const SystemConfig& cfg, const BerSpec& spec, std::ostream& out) {
  const auto rows = ber_rows(cfg, spec);
  write_header(out, cfg, spec.h_ts || spec.p_tx ? "ber --exogenous" : "ber --derived");
  if (spec.h_ts) fmt::print(out, "# h_ts = {}\n", *spec.h_ts);
  if (spec.p_tx) fmt::print(out, "# p_tx = {}\n", *spec.p_tx);
  fmt::print(out, "# threshold = {}\n", spec.detector.threshold);
  fmt::print(out, "power_w_per_m2,n_sys,p_switch,p_r,ber_analytic{}\n",
             spec.empirical ? ",ber_empirical,ci95_lo,ci95_hi" : "");
  for (const auto& r : rows) {
    fmt::print(out, "{},{},{},{},{}", r.power, r.n_sys, r.p_switch, r.p_r, r.ber);
    if (r.empirical) fmt::print(out, ",{},{},{}", r.empirical->ber, r.empirical->ci_low, r.empirical->ci_high);
    fmt::print(out, "\n");
  }
}

ValidationResult validate(const SystemConfig& cfg, std::ostream& out) {
  ValidationResult result;
  const auto report = validate_static_assumption(cfg);
  result.static_ok = report.ok;

  const auto model = make_switching_model(cfg);
  const double p_single = switch_probability(model, 1.0);
  const double p_full = switch_probability(model, static_cast<double>(cfg.n_sys));
  const double margin = p_single > 0 ? std::abs(p_full - p_single) / p_single : 0.0;
  result.independence_ok = margin < kIndependenceTolerance;

  const auto pass = [](bool ok) { return ok ? "PASS" : "FAIL"; };
  fmt::print(out, "check static_assumption: lhs = {:.6g} m, rhs = l_tx = {:.6g} m, ratio = {:.6g}, "
                  "threshold = {} ... {}\n",
             report.lhs, report.rhs, report.ratio, cfg.static_threshold, pass(report.ok));
  fmt::print(out, "check switching_independence: |p_switch(N_sys) - p_switch(1)| / p_switch(1) = {:.6g}, "
                  "tolerance = {} ... {}\n",
             margin, kIndependenceTolerance, pass(result.independence_ok));
  fmt::print(out, "p_tx = {:.6g}\n", cfg.p_tx());
  fmt::print(out, "distance = {:.6g} m\n", cfg.distance());
  fmt::print(out, "t_s = {:.6g} s\n", cfg.sampling_time());
  fmt::print(out, "absorption_scale = {:.6g}\n", model.absorption_scale);
  fmt::print(out, "photon_energy = {:.6g} J\n", model.photon_energy);
  fmt::print(out, "photon_flux = {:.6g} 1/s at {} W/m^2\n", model.photon_flux, cfg.tx.irradiance_on);
  fmt::print(out, "p_switch = {:.6g}\n", experiment_switch_probability(cfg, model));
  fmt::print(out, "h(t_s) = {:.6g}\n", hit_probability(make_channel_model(cfg), cfg.sampling_time()));
  fmt::print(out, "result: {}\n", pass(result.ok()));
  return result;
}

}  // namespace mediamod::experiments
