#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mediamod/channel.hpp"
#include "mediamod/experiments.hpp"
#include "mediamod/photochem.hpp"

using namespace mediamod;
namespace ex = mediamod::experiments;

namespace {

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  bool header_seen = false;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::vector<std::string> cells;
    std::istringstream cell_in(line);
    for (std::string cell; std::getline(cell_in, cell, ',');) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_SUITE("experiments") {

TEST_CASE("grids") {
  const auto g = ex::log_grid(1e3, 1e6, 4);
  REQUIRE(g.size() == 4);
  CHECK(g.front() == 1e3);
  CHECK(g[1] == doctest::Approx(1e4));
  CHECK(g.back() == 1e6);
  const auto l = ex::linear_grid(0.0, 40.0, 0.5);
  REQUIRE(l.size() == 81);
  CHECK(l[40] == 20.0);
  CHECK(l.back() == 40.0);
  CHECK_THROWS_AS(ex::require_increasing({1.0, 1.0}, "x"), std::invalid_argument);
  CHECK_THROWS_AS(ex::require_increasing({}, "x"), std::invalid_argument);
}

TEST_CASE("header carries the resolved configuration") {
  const auto cfg = load_config("flow_v = 0.02");
  std::ostringstream out;
  ex::write_header(out, cfg, "cir");
  std::string reparsed;
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "# mediamod cir");
  while (std::getline(in, line)) reparsed += line.substr(2) + "\n";
  CHECK(load_config(reparsed) == cfg);
}

TEST_CASE("switching curve") {
  const auto cfg = load_config("");
  std::ostringstream a, b;
  ex::switching_curve(cfg, {}, a);
  ex::switching_curve(cfg, {}, b);
  CHECK(a.str() == b.str());

  const auto rows = csv_rows(a.str());
  REQUIRE(rows.size() == 75);
  for (std::size_t i = 0; i < 25; ++i) {
    const double small = std::stod(rows[i][2]);
    const double mid = std::stod(rows[25 + i][2]);
    const double large = std::stod(rows[50 + i][2]);
    CHECK(std::abs(mid - small) <= 0.01 * small);
    CHECK(large <= mid);
    if (mid < 0.999) CHECK(large < mid);
    if (i > 0) {
      const double prev = std::stod(rows[i - 1][2]);
      CHECK(small >= prev);
      if (prev < 0.999) CHECK(small > prev);
    }
  }
  CHECK(std::stod(rows[0][2]) == doctest::Approx(0.11267139330508635).epsilon(1e-12));

  std::ostringstream zero;
  ex::switching_curve(cfg, {{0.0, 1.0}, {1e2}}, zero);
  CHECK(std::stod(csv_rows(zero.str())[0][2]) == 0.0);
}

TEST_CASE("analytic CIR") {
  const auto cfg = load_config("irradiance_on = 1e5");
  std::ostringstream out;
  ex::cir(cfg, {}, out);
  const auto rows = csv_rows(out.str());
  REQUIRE(rows.size() == 81);
  const auto peak = std::max_element(rows.begin(), rows.end(), [](const auto& x, const auto& y) {
    return std::stod(x[2]) < std::stod(y[2]);
  });
  CHECK(std::stod((*peak)[0]) == 20.0);

  SUBCASE("scales linearly with p_switch") {
    const auto base = load_config("");
    const auto channel = make_channel_model(base);
    const double p1 = experiment_switch_probability(base, make_switching_model(base));
    const double p2 = experiment_switch_probability(cfg, make_switching_model(cfg));
    for (double t : {15.0, 19.0, 20.0, 25.0}) {
      const double c1 = expected_cir(base, make_switching_model(base), t);
      const double c2 = expected_cir(cfg, make_switching_model(cfg), t);
      CHECK(c2 / p2 == doctest::Approx(c1 / p1).epsilon(1e-9));
      CHECK(c1 == doctest::Approx(1000 * 0.1 * p1 * hit_probability(channel, t)).epsilon(1e-12));
    }
  }
}

TEST_CASE("CIR with PBS columns") {
  const auto cfg = load_config("n_realizations = 200");
  std::ostringstream out;
  ex::cir(cfg, {{0.0, 10.0, 20.0}, true}, out);
  const auto rows = csv_rows(out.str());
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].size() == 5);
  CHECK(std::stod(rows[1][3]) == 0.0);
  CHECK(std::stod(rows[2][3]) > 5.0);
}

TEST_CASE("PMF") {
  SUBCASE("bit 0 gives a single certain row") {
    const auto cfg = load_config("n_realizations = 50");
    std::ostringstream out;
    CHECK(ex::pmf(cfg, {0}, out) == 0.0);
    const auto rows = csv_rows(out.str());
    REQUIRE(rows.size() == 1);
    CHECK(rows[0][0] == "0");
    CHECK(std::stod(rows[0][1]) == 1.0);
    CHECK(std::stod(rows[0][2]) == 1.0);
  }
  SUBCASE("bit 1 covers the bulk") {
    const auto cfg = load_config("n_realizations = 300");
    std::ostringstream out;
    const double tv = ex::pmf(cfg, {1}, out);
    CHECK(tv < 0.15);
    const auto rows = csv_rows(out.str());
    double analytic = 0, empirical = 0;
    for (const auto& r : rows) {
      analytic += std::stod(r[1]);
      empirical += std::stod(r[2]);
    }
    CHECK(analytic == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(empirical == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(out.str().find("# tv_distance = ") != std::string::npos);
  }
}

TEST_CASE("BER table") {
  const auto cfg = load_config("");
  const auto rows = ex::ber_rows(cfg, {});
  REQUIRE(rows.size() == 75);

  SUBCASE("floor at high power") {
    for (const auto& r : rows) {
      const double floor = 0.5 * std::pow(1 - 0.1 * 0.999, double(r.n_sys));
      CHECK(r.ber >= floor * (1 - 1e-12));
      if (r.power == 1e6) CHECK(r.ber == doctest::Approx(floor).epsilon(1e-6));
    }
    CHECK(rows[24].ber == doctest::Approx(0.1745).epsilon(1e-3));
  }
  SUBCASE("monotone in power and n_sys") {
    for (std::size_t k = 0; k < 3; ++k)
      for (std::size_t i = 1; i < 25; ++i) {
        CHECK(rows[25 * k + i].ber <= rows[25 * k + i - 1].ber);
        if (rows[25 * k + i - 1].p_switch < 0.999) CHECK(rows[25 * k + i].ber < rows[25 * k + i - 1].ber);
      }
    for (std::size_t i = 0; i < 25; ++i) {
      CHECK(rows[25 + i].ber < rows[i].ber);
      CHECK(rows[50 + i].ber < rows[25 + i].ber);
    }
  }
  SUBCASE("derived channel quantities") {
    ex::BerSpec spec;
    spec.h_ts.reset();
    spec.p_tx.reset();
    spec.n_sys = {1000};
    spec.powers = {1e3};
    const auto derived = ex::ber_rows(cfg, spec);
    REQUIRE(derived.size() == 1);
    CHECK(derived[0].p_r == doctest::Approx(0.011255767936238660).epsilon(1e-12));
    CHECK(derived[0].ber == doctest::Approx(6.0664275893174227e-6).epsilon(1e-10));
  }
  SUBCASE("CSV output is reproducible") {
    ex::BerSpec spec;
    spec.powers = {1e3, 1e4};
    spec.empirical = true;
    spec.trials = 20000;
    std::ostringstream a, b;
    ex::ber(cfg, spec, a);
    ex::ber(cfg, spec, b);
    CHECK(a.str() == b.str());
    CHECK(csv_rows(a.str())[0].size() == 8);
  }
}

TEST_CASE("validate report") {
  std::ostringstream out;
  CHECK(ex::validate(load_config(""), out).ok());
  CHECK(out.str().find("result: PASS") != std::string::npos);

  std::ostringstream slow;
  const auto r = ex::validate(load_config("flow_v = 1"), slow);
  CHECK_FALSE(r.static_ok);
  CHECK(slow.str().find("FAIL") != std::string::npos);

  std::ostringstream dense;
  const auto d = ex::validate(load_config("n_sys = 1e14"), dense);
  CHECK(d.static_ok);
  CHECK_FALSE(d.independence_ok);
}

}
