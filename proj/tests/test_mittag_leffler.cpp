#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <thread>
#include <vector>

#include "fmaxwell/errors.hpp"
#include "fmaxwell/mittag_leffler.hpp"
#include "oracles.hpp"

using namespace fmaxwell;

TEST_CASE("oracles agree with each other before anything else") {
  CHECK(oracle::ml_half(1.0) == doctest::Approx(oracle::frozen::e_erfc_1).epsilon(1e-14));
  CHECK(oracle::ml_series_mp(0.5, 1.0, -1.0) == doctest::Approx(oracle::frozen::e_erfc_1).epsilon(1e-15));
  CHECK(oracle::ml_series_mp(0.75, 1.0, -4.0) == doctest::Approx(oracle::frozen::ml_075_minus4).epsilon(1e-15));
  CHECK(oracle::ml_spectral_brute(0.75, 4.0) == doctest::Approx(oracle::frozen::ml_075_minus4).epsilon(1e-9));
}

TEST_CASE("ml_series") {
  SUBCASE("zero argument keeps only the first term") {
    const MLResult r = ml_series({0.5, 1.0, 0.0});
    CHECK(r.value == 1.0);
    CHECK(r.regime == MLRegime::Series);
  }
  SUBCASE("alpha = 1 is the exponential") {
    CHECK(ml_series({1.0, 1.0, -2.0, 1e-17}).value == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
  }
  SUBCASE("alpha = 1/2 against exp(z^2) erfc(z)") {
    const MLResult r = ml_series({0.5, 1.0, -1.0, 1e-16});
    CHECK(std::fabs(r.value - oracle::ml_half(1.0)) < 1e-13);
    CHECK(std::fabs(r.value - oracle::frozen::e_erfc_1) < 1e-13);
    CHECK(r.est_error <= 1e-16);
    CHECK(std::fabs(ml_series({0.5, 1.0, -1.0}).value - oracle::frozen::e_erfc_1) <= 1e-12);
  }
  SUBCASE("general beta") {
    CHECK(ml_series({0.5, 2.0, -1.0, 1e-16}).value == doctest::Approx(oracle::frozen::ml_05_beta2_minus1).epsilon(1e-13));
    CHECK(ml_series({0.5, 0.5, -1.0, 1e-16}).value == doctest::Approx(oracle::frozen::ml_05_beta05_minus1).epsilon(1e-12));
    CHECK(ml_series({0.3, 1.7, -0.8, 1e-16}).value == doctest::Approx(oracle::ml_series_mp(0.3, 1.7, -0.8)).epsilon(1e-13));
  }
  SUBCASE("positive arguments are allowed") {
    CHECK(ml_series({1.0, 1.0, 1.5, 1e-16}).value == doctest::Approx(std::exp(1.5)).epsilon(1e-14));
  }
  SUBCASE("term budget") { CHECK_THROWS_AS(ml_series({0.5, 1.0, -3.0}, 5), NonConvergent); }
  SUBCASE("bad parameters") {
    CHECK_THROWS_AS(ml_series({0.0, 1.0, -1.0}), DomainError);
    CHECK_THROWS_AS(ml_series({1.2, 1.0, -1.0}), DomainError);
    CHECK_THROWS_AS(ml_series({0.5, 0.0, -1.0}), DomainError);
    CHECK_THROWS_AS(ml_series({0.5, 1.0, -1.0, 0.0}), DomainError);
  }
}

TEST_CASE("ml_spectral") {
  SUBCASE("normalization of the spectral density") {
    const MLResult r = ml_spectral(0.5, 0.0);
    CHECK(std::fabs(r.value - 1.0) < 1e-11);
    CHECK(r.regime == MLRegime::Spectral);
  }
  SUBCASE("cross-regime agreement with the series") {
    CHECK(std::fabs(ml_spectral(0.5, -1.0).value - ml_series({0.5, 1.0, -1.0}).value) < 1e-10);
  }
  SUBCASE("extended-precision series oracle") {
    CHECK(std::fabs(ml_spectral(0.75, -4.0).value - oracle::ml_series_mp(0.75, 1.0, -4.0)) < 1e-11);
    CHECK(std::fabs(ml_spectral(0.75, -4.0).value - oracle::frozen::ml_075_minus4) < 1e-11);
  }
  SUBCASE("erfc identity far out") {
    CHECK(std::fabs(ml_spectral(0.5, -50.0).value - oracle::frozen::ml_05_minus50) < 1e-12);
  }
  SUBCASE("orders near 1, where the kernel concentrates at r = 1") {
    for (double alpha : {0.99, 0.9999, 1.0 - 1e-7, 1.0 - 1e-12}) {
      for (double x : {-2.0, -7.0, -12.0}) {
        CAPTURE(alpha);
        CAPTURE(x);
        CHECK(std::fabs(ml_spectral(alpha, x).value - oracle::ml_series_mp(alpha, 1.0, x, 900)) < 1e-12);
      }
    }
  }
  SUBCASE("domain") {
    CHECK_THROWS_AS(ml_spectral(1.0, -1.0), DomainError);
    CHECK_THROWS_AS(ml_spectral(0.5, 0.5), DomainError);
  }
  SUBCASE("refinement budget") {
    MLConfig cfg;
    cfg.spectral_max_refinements = 1;
    CHECK_THROWS_AS(ml_spectral(0.9, -3.0, 1e-14, cfg), QuadratureFailure);
  }
}

TEST_CASE("ml_asymptotic") {
  SUBCASE("single term, alpha = 1/2") {
    const MLResult r = ml_asymptotic(0.5, -100.0, 1);
    CHECK(r.value == doctest::Approx(0.01 / std::sqrt(std::numbers::pi)).epsilon(1e-14));
    CHECK(r.regime == MLRegime::Asymptotic);
    // n = 2 is a Gamma pole; the first omitted non-zero term is n = 3.
    CHECK(r.est_error == doctest::Approx(1e-6 / (2.0 * std::sqrt(std::numbers::pi))).epsilon(1e-12));
  }
  SUBCASE("single term, alpha = 1/4") {
    CHECK(ml_asymptotic(0.25, -1e6, 1).value == doctest::Approx(1e-6 / std::tgamma(0.75)).epsilon(1e-14));
  }
  SUBCASE("three terms are within est_error of the spectral value") {
    const MLResult a = ml_asymptotic(0.5, -50.0, 3);
    const MLResult s = ml_spectral(0.5, -50.0);
    CHECK(std::fabs(a.value - s.value) <= a.est_error);
    CHECK(std::fabs(a.value - oracle::frozen::ml_05_minus50) <= a.est_error);
  }
  SUBCASE("many terms converge to the exact value") {
    CHECK(std::fabs(ml_asymptotic(0.5, -100.0, 100).value - oracle::frozen::ml_05_minus100) < 1e-15);
  }
  SUBCASE("domain") {
    CHECK_THROWS_AS(ml_asymptotic(0.5, -0.5, 3), DomainError);
    CHECK_THROWS_AS(ml_asymptotic(0.5, -5.0, 0), DomainError);
  }
}

TEST_CASE("ml_eval dispatch") {
  CHECK(ml_eval({1.0, 1.0, -std::numbers::ln2}).value == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(ml_eval({1.0, 1.0, -std::numbers::ln2}).regime == MLRegime::Exponential);
  CHECK(ml_eval({0.5, 1.0, 0.0}).value == 1.0);

  SUBCASE("x = -3.7, alpha = 0.9 is in the series/spectral overlap") {
    const OverlapBands bands = overlap_bands(0.9);
    REQUIRE(bands.series_spectral.lo <= 3.7);
    REQUIRE(3.7 <= bands.series_spectral.hi);
    const double series = ml_series({0.9, 1.0, -3.7}).value;
    const double spectral = ml_spectral(0.9, -3.7).value;
    CHECK(std::fabs(series - spectral) < 1e-8);
    CHECK(std::fabs(ml_eval({0.9, 1.0, -3.7}).value - oracle::frozen::ml_09_minus3_7) < 1e-11);
  }
  SUBCASE("regimes by magnitude") {
    CHECK(ml_eval({0.5, 1.0, -1.0}).regime == MLRegime::Series);
    CHECK(ml_eval({0.5, 1.0, -10.0}).regime == MLRegime::Spectral);
    CHECK(ml_eval({0.5, 1.0, -60.0}).regime == MLRegime::Asymptotic);
  }
  SUBCASE("beta != 1 is series-only") {
    CHECK_THROWS_AS(ml_eval({0.5, 2.0, -10.0}), DomainError);
    CHECK(ml_eval({0.5, 2.0, -1.0, 1e-16}).value == doctest::Approx(oracle::frozen::ml_05_beta2_minus1).epsilon(1e-13));
  }
  CHECK_THROWS_AS(ml_eval({0.5, 1.0, 0.1}), DomainError);
}

TEST_CASE("tabulated values across orders") {
  struct Row {
    double alpha, x, expected;
  };
  for (const Row& r : {Row{0.25, -1.0, oracle::frozen::ml_025_minus1}, Row{0.25, -2.0, oracle::frozen::ml_025_minus2},
                       Row{0.75, -1.0, oracle::frozen::ml_075_minus1}, Row{0.75, -2.0, oracle::frozen::ml_075_minus2},
                       Row{0.9, -1.0, oracle::frozen::ml_09_minus1}, Row{0.9, -2.0, oracle::frozen::ml_09_minus2},
                       Row{0.75, -4.0, oracle::frozen::ml_075_minus4},
                       Row{0.5, -std::sqrt(std::log(10.0)), oracle::frozen::ml_05_sqrt_ln10}}) {
    CAPTURE(r.alpha);
    CAPTURE(r.x);
    CHECK(std::fabs(ml_eval({r.alpha, 1.0, r.x}).value - r.expected) < 1e-11);
  }
}

TEST_CASE("properties on random orders") {
  std::mt19937_64 rng(20221015);
  std::uniform_real_distribution<double> order(0.05, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const double alpha = order(rng);
    CAPTURE(alpha);
    CHECK(ml_eval({alpha, 1.0, 0.0}).value == 1.0);

    // Range and strict decrease on a grid spanning all regimes.
    double previous = 1.0;
    for (double y = 0.05; y < 120.0; y *= 1.17) {
      const double v = ml_eval({alpha, 1.0, -y}).value;
      CHECK(v > 0.0);
      CHECK(v <= 1.0);
      CHECK(v < previous);
      previous = v;
    }

    // Adjacent regimes agree within their error estimates across each overlap band.
    const OverlapBands bands = overlap_bands(alpha);
    for (int i = 0; i < 5; ++i) {
      const double y1 = bands.series_spectral.lo + i * (bands.series_spectral.hi - bands.series_spectral.lo) / 4;
      const MLResult a = ml_series({alpha, 1.0, -y1});
      const MLResult b = ml_spectral(alpha, -y1);
      CHECK(std::fabs(a.value - b.value) <= std::max(a.est_error, b.est_error) + 1e-10);

      const double y2 =
          bands.spectral_asymptotic.lo + i * (bands.spectral_asymptotic.hi - bands.spectral_asymptotic.lo) / 4;
      const MLResult c = ml_spectral(alpha, -y2);
      const MLResult d = ml_asymptotic(alpha, -y2, 400);
      // An optimally truncated asymptotic series is off by up to about its first omitted term.
      CHECK(std::fabs(c.value - d.value) <= 2.0 * d.est_error + c.est_error + 1e-12);
    }
  }
}

TEST_CASE("alpha = 1 reduces to the exponential on [-50, 0]") {
  for (double x = -50.0; x <= 0.0; x += 0.0125) CHECK(std::fabs(ml_eval({1.0, 1.0, x}).value - std::exp(x)) < 1e-14);
}

TEST_CASE("finite differences of y -> E_alpha(-y) alternate in sign") {
  for (double alpha : {0.25, 0.5, 0.75, 0.9}) {
    std::vector<double> d;
    for (int i = 0; i <= 60; ++i) d.push_back(ml_eval({alpha, 1.0, -0.1 * i}).value);
    for (int m = 1; m <= 4; ++m) {
      for (std::size_t i = 0; i + 1 < d.size(); ++i) d[i] = d[i + 1] - d[i];
      d.pop_back();
      const double sign = (m % 2 == 1) ? -1.0 : 1.0;
      for (double v : d) CHECK(sign * v > -1e-10);
    }
  }
}

TEST_CASE("concurrent evaluation is deterministic") {
  std::vector<double> xs;
  for (int i = 0; i < 64; ++i) xs.push_back(-0.9 * i);
  std::vector<double> serial;
  for (double x : xs) serial.push_back(ml_eval({0.6, 1.0, x}).value);
  std::vector<double> parallel(xs.size());
  std::vector<std::thread> pool;
  for (int w = 0; w < 4; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < xs.size(); i += 4) parallel[i] = ml_eval({0.6, 1.0, xs[i]}).value;
    });
  }
  for (auto& t : pool) t.join();
  CHECK(parallel == serial);
}
