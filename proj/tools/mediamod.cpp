// mediamod: reproduce switching curves, channel impulse responses, reception
// PMFs and BER curves of a media-modulation link as CSV.
//
// Exit status: 0 ok, 1 failed check or runtime error, 2 usage/config error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "mediamod/config.hpp"
#include "mediamod/experiments.hpp"

namespace {

namespace ex = mediamod::experiments;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsageError = 2;

struct CommonOptions {
  std::string config_path;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> realizations;
  std::string out_path;
};

struct PowerGrid {
  std::vector<double> powers;
  double lo = 1e3;
  double hi = 1e6;
  std::size_t points = 25;

  std::vector<double> resolve() const { return powers.empty() ? ex::log_grid(lo, hi, points) : powers; }
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool with_realizations) {
  cmd->add_option("--config", opts.config_path, "key=value configuration file (default: $MEDIAMOD_CONFIG)");
  cmd->add_option("--set", opts.overrides, "override one configuration key, key=value (repeatable)");
  cmd->add_option("--seed", opts.seed, "master seed for all random streams");
  cmd->add_option("--out", opts.out_path, "output file (default: stdout)");
  if (with_realizations) cmd->add_option("--realizations", opts.realizations, "PBS realizations");
}

void add_power_grid(CLI::App* cmd, PowerGrid& grid) {
  cmd->add_option("--powers", grid.powers, "explicit irradiance grid [W/m^2]")->delimiter(',');
  cmd->add_option("--power-min", grid.lo, "log grid start [W/m^2]");
  cmd->add_option("--power-max", grid.hi, "log grid end [W/m^2]");
  cmd->add_option("--power-points", grid.points, "log grid size");
}

mediamod::SystemConfig resolve_config(const CommonOptions& opts) {
  std::string path = opts.config_path;
  if (path.empty())
    if (const char* env = std::getenv("MEDIAMOD_CONFIG")) path = env;
  auto cfg = path.empty() ? mediamod::load_config("") : mediamod::load_config_file(path);
  std::vector<std::string> overrides = opts.overrides;
  if (opts.seed) overrides.push_back(fmt::format("seed={}", *opts.seed));
  if (opts.realizations) overrides.push_back(fmt::format("n_realizations={}", *opts.realizations));
  return mediamod::apply_overrides(cfg, overrides);
}

template <class Fn>
int with_output(const CommonOptions& opts, Fn&& fn) {
  if (opts.out_path.empty()) return fn(std::cout);
  std::ofstream file(opts.out_path);
  if (!file) throw std::runtime_error(fmt::format("cannot open '{}' for writing", opts.out_path));
  const int code = fn(file);
  file.close();
  if (!file) throw std::runtime_error(fmt::format("failed writing '{}'", opts.out_path));
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Media-modulation molecular communication link: analytic models and particle simulation"};
  app.require_subcommand(1);

  CommonOptions common;

  auto* validate = app.add_subcommand("validate", "check modeling assumptions and print derived quantities");
  add_common(validate, common, false);

  auto* switching = app.add_subcommand("switching-curve", "p_switch versus irradiance for several N_TX");
  PowerGrid switching_grid;
  ex::SwitchingCurveSpec switching_spec;
  add_common(switching, common, false);
  add_power_grid(switching, switching_grid);
  switching->add_option("--n-tx", switching_spec.n_tx, "TX populations")->delimiter(',');

  auto* cir = app.add_subcommand("cir", "end-to-end channel impulse response");
  ex::CirSpec cir_spec;
  double t_min = 0.0, t_max = 40.0, t_step = 0.5;
  add_common(cir, common, true);
  cir->add_option("--t-min", t_min, "first time [s]");
  cir->add_option("--t-max", t_max, "last time [s]");
  cir->add_option("--t-step", t_step, "time step [s]");
  cir->add_flag("--pbs", cir_spec.pbs, "add particle-simulation columns");

  auto* pmf = app.add_subcommand("pmf", "distribution of N_RX(t_s), analytic and simulated");
  ex::PmfSpec pmf_spec;
  add_common(pmf, common, true);
  pmf->add_option("--bit", pmf_spec.bit, "transmitted bit")->check(CLI::IsMember({0, 1}));

  auto* ber = app.add_subcommand("ber", "bit error rate versus irradiance");
  PowerGrid ber_grid;
  ex::BerSpec ber_spec;
  double h_ts = 0.999, p_tx = 0.1;
  bool derived = false;
  add_common(ber, common, false);
  add_power_grid(ber, ber_grid);
  ber->add_option("--n-sys", ber_spec.n_sys, "molecule counts")->delimiter(',');
  ber->add_option("--h-ts", h_ts, "prescribed h(t_s) in exogenous mode");
  ber->add_option("--p-tx", p_tx, "prescribed p_TX in exogenous mode");
  ber->add_flag("--derived", derived, "derive h(t_s) and p_TX from the geometry");
  ber->add_flag("--empirical", ber_spec.empirical, "add Monte-Carlo BER with Wilson 95% interval");
  ber->add_option("--trials", ber_spec.trials, "Monte-Carlo trials per row");
  ber->add_option("--theta", ber_spec.detector.threshold, "detection threshold")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    const auto cfg = resolve_config(common);
    if (*validate) {
      return with_output(common, [&](std::ostream& out) {
        return ex::validate(cfg, out).ok() ? kOk : kCheckFailed;
      });
    }
    if (*switching) {
      switching_spec.powers = switching_grid.resolve();
      return with_output(common, [&](std::ostream& out) {
        ex::switching_curve(cfg, switching_spec, out);
        return kOk;
      });
    }
    if (*cir) {
      cir_spec.times = ex::linear_grid(t_min, t_max, t_step);
      return with_output(common, [&](std::ostream& out) {
        ex::cir(cfg, cir_spec, out);
        return kOk;
      });
    }
    if (*pmf) {
      return with_output(common, [&](std::ostream& out) {
        ex::pmf(cfg, pmf_spec, out);
        return kOk;
      });
    }
    if (*ber) {
      ber_spec.powers = ber_grid.resolve();
      if (derived) {
        ber_spec.h_ts.reset();
        ber_spec.p_tx.reset();
      } else {
        ber_spec.h_ts = h_ts;
        ber_spec.p_tx = p_tx;
      }
      return with_output(common, [&](std::ostream& out) {
        ex::ber(cfg, ber_spec, out);
        return kOk;
      });
    }
  } catch (const mediamod::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kCheckFailed;
  }
  return kUsageError;
}
