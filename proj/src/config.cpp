#include "mediamod/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <variant>

#include <fmt/format.h>

namespace mediamod {
namespace {

using FieldRef = std::variant<double*, std::uint64_t*>;

struct Field {
  const char* key;
  FieldRef (*bind)(SystemConfig&);
};

// Order here is the serialization order.
constexpr Field kFields[] = {
    {"height", [](SystemConfig& c) -> FieldRef { return &c.duct.height; }},
    {"width", [](SystemConfig& c) -> FieldRef { return &c.duct.width; }},
    {"sys_length", [](SystemConfig& c) -> FieldRef { return &c.duct.sys_length; }},
    {"z_a_tx", [](SystemConfig& c) -> FieldRef { return &c.tx.z_a; }},
    {"z_b_tx", [](SystemConfig& c) -> FieldRef { return &c.tx.z_b; }},
    {"irradiance_on", [](SystemConfig& c) -> FieldRef { return &c.tx.irradiance_on; }},
    {"irradiation_time", [](SystemConfig& c) -> FieldRef { return &c.tx.irradiation_time; }},
    {"wavelength_ba", [](SystemConfig& c) -> FieldRef { return &c.tx.wavelength_ba; }},
    {"z_a_rx", [](SystemConfig& c) -> FieldRef { return &c.rx.z_a; }},
    {"z_b_rx", [](SystemConfig& c) -> FieldRef { return &c.rx.z_b; }},
    {"wavelength_f_in", [](SystemConfig& c) -> FieldRef { return &c.rx.wavelength_f_in; }},
    {"wavelength_f_out", [](SystemConfig& c) -> FieldRef { return &c.rx.wavelength_f_out; }},
    {"diff_a", [](SystemConfig& c) -> FieldRef { return &c.molecule.diff_a; }},
    {"diff_b", [](SystemConfig& c) -> FieldRef { return &c.molecule.diff_b; }},
    {"molar_absorption", [](SystemConfig& c) -> FieldRef { return &c.molecule.molar_absorption; }},
    {"quantum_yield", [](SystemConfig& c) -> FieldRef { return &c.molecule.quantum_yield; }},
    {"wavelength_ab", [](SystemConfig& c) -> FieldRef { return &c.molecule.wavelength_ab; }},
    {"flow_v", [](SystemConfig& c) -> FieldRef { return &c.flow_v; }},
    {"n_sys", [](SystemConfig& c) -> FieldRef { return &c.n_sys; }},
    {"pbs_dt", [](SystemConfig& c) -> FieldRef { return &c.pbs_dt; }},
    {"n_realizations", [](SystemConfig& c) -> FieldRef { return &c.n_realizations; }},
    {"seed", [](SystemConfig& c) -> FieldRef { return &c.seed; }},
    {"static_threshold", [](SystemConfig& c) -> FieldRef { return &c.static_threshold; }},
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

const Field* find_field(std::string_view key) {
  for (const auto& f : kFields)
    if (key == f.key) return &f;
  return nullptr;
}

[[noreturn]] void parse_error(std::string_view key, const std::string& msg) {
  throw ConfigError(ConfigError::Kind::Parse, std::string(key), msg);
}

double parse_double(std::string_view key, std::string_view text) {
  double value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value))
    parse_error(key, fmt::format("config: cannot parse '{}' as a real number for key '{}'", text, key));
  return value;
}

std::uint64_t parse_count(std::string_view key, std::string_view text) {
  std::uint64_t value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec == std::errc() && ptr == end) return value;
  // Accept integral values written in scientific notation, e.g. 1e4.
  const double d = parse_double(key, text);
  if (d < 0 || d != std::floor(d) || d > 9007199254740992.0)
    parse_error(key, fmt::format("config: '{}' is not a non-negative integer for key '{}'", text, key));
  return static_cast<std::uint64_t>(d);
}

void assign(SystemConfig& cfg, std::string_view key, std::string_view value) {
  const Field* field = find_field(key);
  if (field == nullptr)
    throw ConfigError(ConfigError::Kind::UnknownKey, std::string(key),
                      fmt::format("config: unknown key '{}'", key));
  std::visit(
      [&](auto* slot) {
        using T = std::remove_pointer_t<decltype(slot)>;
        if constexpr (std::is_same_v<T, double>)
          *slot = parse_double(key, value);
        else
          *slot = parse_count(key, value);
      },
      field->bind(cfg));
}

void assign_line(SystemConfig& cfg, std::string_view line, std::size_t line_no) {
  const auto eq = line.find('=');
  if (eq == std::string_view::npos)
    parse_error("", fmt::format("config: line {}: expected 'key = value', got '{}'", line_no, line));
  const auto key = trim(line.substr(0, eq));
  const auto value = trim(line.substr(eq + 1));
  if (key.empty())
    parse_error("", fmt::format("config: line {}: missing key", line_no));
  if (value.empty())
    parse_error(key, fmt::format("config: line {}: missing value for key '{}'", line_no, key));
  assign(cfg, key, value);
}

void require(bool predicate, const char* key, const char* what, double got) {
  if (!predicate)
    throw ConfigError(ConfigError::Kind::Invariant, key,
                      fmt::format("config: invariant violated: {} (got {} = {})", what, key, got));
}

}  // namespace

void validate(const SystemConfig& c) {
  auto copy = c;
  for (const auto& f : kFields) {
    const auto ref = f.bind(copy);
    if (const auto* d = std::get_if<double*>(&ref)) require(std::isfinite(**d), f.key, "value is finite", **d);
  }
  require(c.duct.height > 0, "height", "height > 0", c.duct.height);
  require(c.duct.width > 0, "width", "width > 0", c.duct.width);
  require(c.duct.sys_length > 0, "sys_length", "sys_length > 0", c.duct.sys_length);

  require(c.tx.z_a >= 0, "z_a_tx", "z_a_tx >= 0", c.tx.z_a);
  require(c.tx.z_b > c.tx.z_a, "z_b_tx", "z_b_tx > z_a_tx", c.tx.z_b);
  require(c.tx.z_b <= c.duct.sys_length, "z_b_tx", "z_b_tx <= sys_length", c.tx.z_b);
  require(c.tx.irradiance_on >= 0, "irradiance_on", "irradiance_on >= 0", c.tx.irradiance_on);
  require(c.tx.irradiation_time > 0, "irradiation_time", "irradiation_time > 0",
          c.tx.irradiation_time);
  require(c.tx.wavelength_ba > 0, "wavelength_ba", "wavelength_ba > 0", c.tx.wavelength_ba);

  require(c.rx.z_b > c.rx.z_a, "z_b_rx", "z_b_rx > z_a_rx", c.rx.z_b);
  require(c.rx.z_a >= c.tx.z_b, "z_a_rx", "z_a_rx >= z_b_tx (RX downstream of TX)", c.rx.z_a);
  require(c.rx.z_b <= c.duct.sys_length, "z_b_rx", "z_b_rx <= sys_length", c.rx.z_b);
  require(c.rx.wavelength_f_in > 0, "wavelength_f_in", "wavelength_f_in > 0", c.rx.wavelength_f_in);
  require(c.rx.wavelength_f_out > 0, "wavelength_f_out", "wavelength_f_out > 0",
          c.rx.wavelength_f_out);

  require(c.molecule.diff_a > 0, "diff_a", "diff_a > 0", c.molecule.diff_a);
  require(c.molecule.diff_b > 0, "diff_b", "diff_b > 0", c.molecule.diff_b);
  require(c.molecule.molar_absorption > 0, "molar_absorption", "molar_absorption > 0",
          c.molecule.molar_absorption);
  require(c.molecule.quantum_yield > 0 && c.molecule.quantum_yield <= 1, "quantum_yield",
          "0 < quantum_yield <= 1", c.molecule.quantum_yield);
  require(c.molecule.wavelength_ab > 0, "wavelength_ab", "wavelength_ab > 0",
          c.molecule.wavelength_ab);

  require(c.flow_v > 0, "flow_v", "flow_v > 0", c.flow_v);
  require(c.n_sys >= 1, "n_sys", "n_sys >= 1", static_cast<double>(c.n_sys));
  require(c.pbs_dt > 0, "pbs_dt", "pbs_dt > 0", c.pbs_dt);
  require(c.n_realizations >= 1, "n_realizations", "n_realizations >= 1",
          static_cast<double>(c.n_realizations));
  require(c.static_threshold > 0, "static_threshold", "static_threshold > 0", c.static_threshold);

  const double p_tx = c.p_tx();
  require(p_tx > 0 && p_tx <= 1, "z_b_tx", "0 < p_tx <= 1", p_tx);
  require(c.distance() > 0, "z_a_rx", "distance d > 0", c.distance());
}

SystemConfig load_config(std::string_view text) {
  SystemConfig cfg;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    assign_line(cfg, line, line_no);
  }
  validate(cfg);
  return cfg;
}

SystemConfig apply_overrides(SystemConfig cfg, const std::vector<std::string>& assignments) {
  for (std::size_t i = 0; i < assignments.size(); ++i) assign_line(cfg, trim(assignments[i]), i + 1);
  validate(cfg);
  return cfg;
}

SystemConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError(ConfigError::Kind::Parse, "", fmt::format("config: cannot open '{}'", path));
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_config(buf.str());
}

std::string serialize(const SystemConfig& cfg) {
  std::string out;
  auto copy = cfg;
  for (const auto& f : kFields) {
    std::visit([&](auto* slot) { out += fmt::format("{} = {}\n", f.key, *slot); }, f.bind(copy));
  }
  return out;
}

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const auto& f : kFields) keys.emplace_back(f.key);
  return keys;
}

ValidityReport validate_static_assumption(const SystemConfig& cfg) {
  const double t = cfg.tx.irradiation_time;
  ValidityReport r;
  r.lhs = std::sqrt(2.0 * cfg.molecule.diff_b * t) + cfg.flow_v * t;
  r.rhs = cfg.tx.length();
  r.ratio = r.lhs / r.rhs;
  r.ok = r.ratio < cfg.static_threshold;
  return r;
}

}  // namespace mediamod
