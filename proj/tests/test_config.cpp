#include <doctest.h>

#include <cmath>
#include <random>

#include "mediamod/config.hpp"

using namespace mediamod;

TEST_SUITE("config") {

TEST_CASE("empty document yields the default parameter table") {
  const auto cfg = load_config("");
  CHECK(cfg.duct.height == 1e-3);
  CHECK(cfg.duct.width == 1e-3);
  CHECK(cfg.duct.sys_length == 0.5);
  CHECK(cfg.tx.length() == doctest::Approx(0.05).epsilon(1e-12));
  CHECK(cfg.rx.length() == doctest::Approx(0.05).epsilon(1e-12));
  CHECK(cfg.distance() == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(cfg.flow_v == 0.01);
  CHECK(cfg.molecule.diff_a == 1e-10);
  CHECK(cfg.molecule.diff_b == cfg.molecule.diff_a);
  CHECK(cfg.n_sys == 1000);
  CHECK(cfg.tx.wavelength_ba == 365e-9);
  CHECK(cfg.molecule.wavelength_ab == 405e-9);
  CHECK(cfg.rx.wavelength_f_in == 515e-9);
  CHECK(cfg.rx.wavelength_f_out == 529e-9);
  CHECK(cfg.molecule.molar_absorption == 8.3e3);
  CHECK(cfg.molecule.quantum_yield == 0.41);
  CHECK(cfg.tx.irradiation_time == 5e-3);
  CHECK(cfg.pbs_dt == 1e-2);
}

TEST_CASE("derived quantities") {
  const auto cfg = load_config("");
  CHECK(cfg.p_tx() == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(cfg.sampling_time() == doctest::Approx(20.0).epsilon(1e-12));
  CHECK(cfg.p_tx() == cfg.tx_volume() / cfg.sys_volume());
  CHECK(cfg.sampling_time() == cfg.distance() / cfg.flow_v);
  CHECK(cfg.tx_area() == doctest::Approx(5e-5).epsilon(1e-12));
}

TEST_CASE("comments, blank lines and whitespace are tolerated") {
  const auto cfg = load_config("# header\n\n  flow_v =  0.02   # faster\nn_sys=50\r\n");
  CHECK(cfg.flow_v == 0.02);
  CHECK(cfg.n_sys == 50);
}

TEST_CASE("integral counts may use scientific notation") {
  CHECK(load_config("n_realizations = 1e4").n_realizations == 10000);
  CHECK_THROWS_AS(load_config("n_sys = 10.5"), ConfigError);
}

TEST_CASE("error kinds") {
  auto kind_of = [](const char* doc) {
    try {
      load_config(doc);
    } catch (const ConfigError& e) {
      return e.kind();
    }
    FAIL("expected ConfigError");
    return ConfigError::Kind::Parse;
  };
  CHECK(kind_of("flow_v 0.01") == ConfigError::Kind::Parse);
  CHECK(kind_of("flow_v = fast") == ConfigError::Kind::Parse);
  CHECK(kind_of("flow_v =") == ConfigError::Kind::Parse);
  CHECK(kind_of("velocity = 0.01") == ConfigError::Kind::UnknownKey);
  CHECK(kind_of("flow_v = 0") == ConfigError::Kind::Invariant);
}

TEST_CASE("invariant violations name the field and the predicate") {
  try {
    load_config("flow_v = 0");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "flow_v");
    CHECK(std::string(e.what()).find("flow_v > 0") != std::string::npos);
  }
  CHECK_THROWS_AS(load_config("quantum_yield = 1.5"), ConfigError);
  CHECK_THROWS_AS(load_config("z_a_rx = 0.12"), ConfigError);  // overlaps the TX
  CHECK_THROWS_AS(load_config("z_b_rx = 0.6"), ConfigError);   // outside S
  CHECK_THROWS_AS(load_config("z_b_tx = 0.05"), ConfigError);
  CHECK_THROWS_AS(load_config("n_sys = 0"), ConfigError);
  CHECK_THROWS_AS(load_config("irradiance_on = -1"), ConfigError);
  CHECK_THROWS_AS(load_config("pbs_dt = 0"), ConfigError);
  CHECK_NOTHROW(load_config("irradiance_on = 0"));
}

TEST_CASE("overrides are applied in order and revalidated") {
  const auto base = load_config("");
  const auto cfg = apply_overrides(base, {"flow_v=0.02", "flow_v = 0.03", "seed=7"});
  CHECK(cfg.flow_v == 0.03);
  CHECK(cfg.seed == 7);
  CHECK_THROWS_AS(apply_overrides(base, {"z_a_tx=0.2"}), ConfigError);
}

TEST_CASE("serialize/load round trip on random valid configurations") {
  std::mt19937_64 gen(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    SystemConfig cfg;
    cfg.duct.height = 1e-4 + u(gen) * 1e-2;
    cfg.duct.width = 1e-4 + u(gen) * 1e-2;
    cfg.duct.sys_length = 0.1 + u(gen);
    const double l = cfg.duct.sys_length;
    cfg.tx.z_a = u(gen) * 0.2 * l;
    cfg.tx.z_b = cfg.tx.z_a + (0.01 + u(gen) * 0.2) * l;
    cfg.rx.z_a = cfg.tx.z_b + u(gen) * 0.2 * l;
    cfg.rx.z_b = cfg.rx.z_a + (0.01 + u(gen) * 0.2) * l;
    cfg.tx.irradiance_on = u(gen) * 1e6;
    cfg.tx.irradiation_time = 1e-6 + u(gen);
    cfg.molecule.diff_a = 1e-12 + u(gen) * 1e-9;
    cfg.molecule.diff_b = 1e-12 + u(gen) * 1e-9;
    cfg.molecule.quantum_yield = 0.01 + 0.99 * u(gen);
    cfg.flow_v = 1e-4 + u(gen);
    cfg.n_sys = 1 + gen() % 100000;
    cfg.seed = gen();
    cfg.pbs_dt = 1e-3 + u(gen) * 1e-1;
    REQUIRE_NOTHROW(validate(cfg));
    const auto text = serialize(cfg);
    const auto back = load_config(text);
    CHECK(back == cfg);
    CHECK(serialize(back) == text);
  }
}

TEST_CASE("every key is serialized") {
  const auto text = serialize(load_config(""));
  for (const auto& key : config_keys()) CHECK(text.find(key + " = ") != std::string::npos);
}

TEST_CASE("static assumption check") {
  const auto cfg = load_config("");
  const auto r = validate_static_assumption(cfg);
  CHECK(r.lhs == doctest::Approx(5.1e-5).epsilon(1e-9));
  CHECK(r.rhs == doctest::Approx(5e-2).epsilon(1e-12));
  CHECK(r.ok);

  SUBCASE("zero illumination time") {
    auto c = cfg;
    c.tx.irradiation_time = 0;
    const auto z = validate_static_assumption(c);
    CHECK(z.lhs == 0.0);
    CHECK(z.ok);
  }
  SUBCASE("fast flow breaks the assumption") {
    const auto fast = apply_overrides(cfg, {"flow_v=1"});
    const auto f = validate_static_assumption(fast);
    CHECK(f.lhs >= 5e-3);
    CHECK(f.ratio >= 0.1);
    CHECK_FALSE(f.ok);
  }
  SUBCASE("threshold is configurable") {
    const auto strict = apply_overrides(cfg, {"static_threshold=1e-3"});
    CHECK_FALSE(validate_static_assumption(strict).ok);
  }
}

}
