#include <doctest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>

#include "mediamod/detect.hpp"

using namespace mediamod;

namespace {
constexpr double kReception = 0.011255767936238660;
constexpr double kBer1000 = 6.0664275893174227e-6;  // 0.5 (1 - kReception)^1000
constexpr double kFloor10 = 0.17453302717832564;    // 0.5 (1 - 0.0999)^10
}  // namespace

TEST_SUITE("detect") {

TEST_CASE("threshold rule") {
  CHECK(detect(0) == 0);
  CHECK(detect(1) == 1);
  CHECK(detect(5, {3}) == 1);
  CHECK(detect(2, {3}) == 0);
  CHECK_THROWS_AS(detect(1, {0}), std::domain_error);
}

TEST_CASE("analytic BER") {
  CHECK(ber_analytic(1000, 0.0) == 0.5);
  CHECK(ber_analytic(10, 0.0999) == doctest::Approx(kFloor10).epsilon(1e-14));
  CHECK(ber_analytic(10, 0.0999) == doctest::Approx(0.1745).epsilon(1e-3));
  CHECK(ber_analytic(1000, kReception) == doctest::Approx(kBer1000).epsilon(1e-12));
  CHECK(ber_analytic(1000, 1.0) == 0.0);

  SUBCASE("extended-precision cross-check") {
    using F = boost::multiprecision::cpp_bin_float_50;
    for (auto [n, p] : {std::pair{1000ull, kReception}, std::pair{1000000000ull, 1e-12},
                        std::pair{1000000000ull, 1e-8}, std::pair{50ull, 0.3}}) {
      const double ref = static_cast<double>(F(0.5) * pow(F(1) - F(p), n));
      CHECK(ber_analytic(n, p) == doctest::Approx(ref).epsilon(1e-12));
    }
  }
  SUBCASE("monotone in p_r and N_sys") {
    double prev = 1.0;
    for (double p = 0; p <= 0.2; p += 0.005) {
      const double b = ber_analytic(100, p);
      CHECK(b <= prev);
      prev = b;
    }
    for (std::uint64_t n = 1; n < 2000; n += 37) CHECK(ber_analytic(n + 1, 0.01) < ber_analytic(n, 0.01));
  }
  SUBCASE("equals half the zero-count probability") {
    for (double p : {0.0, 1e-6, kReception, 0.3, 0.9999}) {
      const ReceptionDistribution d{1000, p, Stage::Received};
      CHECK(ber_analytic(1000, p) == 0.5 * nrx_pmf(d, 0));
    }
  }
  SUBCASE("generalized threshold") {
    const ReceptionDistribution d{1000, kReception, Stage::Received};
    const double expected = 0.5 * (nrx_pmf(d, 0) + nrx_pmf(d, 1) + nrx_pmf(d, 2));
    CHECK(ber_analytic(1000, kReception, {3}) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(ber_analytic(1000, kReception, {3}) > ber_analytic(1000, kReception));
  }
  SUBCASE("error floor at deterministic switching") {
    const double p_tx = 0.1, h = 0.999;
    CHECK(ber_analytic(10, p_tx * 1.0 * h) == doctest::Approx(0.5 * std::pow(1 - p_tx * h, 10)).epsilon(1e-14));
  }
}

TEST_CASE("Wilson interval") {
  double lo, hi;
  wilson_interval(50, 100, lo, hi);
  CHECK(lo == doctest::Approx(0.4038).epsilon(1e-3));
  CHECK(hi == doctest::Approx(0.5962).epsilon(1e-3));
  wilson_interval(0, 1000, lo, hi);
  CHECK(lo == 0.0);
  CHECK(hi > 0.0);
}

TEST_CASE("empirical BER") {
  SUBCASE("blind guessing when nothing arrives") {
    const auto e = ber_empirical(1000, 0.0, 100000, 5);
    CHECK(e.ci_low <= 0.5);
    CHECK(e.ci_high >= 0.5);
  }
  SUBCASE("perfect reception") {
    CHECK(ber_empirical(1000, 1.0, 10000, 5).errors == 0);
  }
  SUBCASE("no false positives") {
    // With p_r = 0 every error is a missed 1; none comes from a 0-symbol.
    const auto e = ber_empirical(10, 0.0, 20000, 11);
    RandomStream bits(11, 0, StreamPurpose::Detection);
    std::uint64_t ones = 0;
    for (int i = 0; i < 20000; ++i) ones += bits.bernoulli(0.5) ? 1 : 0;
    CHECK(e.errors == ones);
  }
  SUBCASE("default link") {
    const auto e = ber_empirical(1000, kReception, 1000000, 2021);
    CHECK(e.ci_low <= kBer1000);
    CHECK(e.ci_high >= kBer1000);
  }
  SUBCASE("deterministic and thread-count independent") {
    const auto a = ber_empirical(50, 0.02, 300000, 3, {}, 1);
    const auto b = ber_empirical(50, 0.02, 300000, 3, {}, 4);
    CHECK(a.errors == b.errors);
  }
  SUBCASE("common random numbers make the estimate monotone in p_r") {
    std::uint64_t prev = ~0ull;
    for (double p = 0.0; p < 0.1; p += 0.01) {
      const auto e = ber_empirical(20, p, 50000, 8);
      CHECK(e.errors <= prev);
      prev = e.errors;
    }
  }
}

}
