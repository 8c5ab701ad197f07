#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fmaxwell/errors.hpp"
#include "fmaxwell/gamma.hpp"
#include "oracles.hpp"

using namespace fmaxwell;

TEST_CASE("gamma matches the C library on the working domain") {
  for (double x = -9.95; x < 170.0; x += 0.0731) {
    if (is_gamma_pole(x)) continue;
    const double expected = std::tgamma(x);
    CHECK(std::fabs(fmaxwell::gamma(x) - expected) <= 2e-14 * std::fabs(expected));
  }
}

TEST_CASE("gamma special values") {
  CHECK(fmaxwell::gamma(1.0) == 1.0);
  CHECK(fmaxwell::gamma(5.0) == 24.0);
  CHECK(fmaxwell::gamma(0.5) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-15));
  CHECK(fmaxwell::gamma(1.5) == doctest::Approx(std::sqrt(std::numbers::pi) / 2).epsilon(1e-15));
  CHECK(fmaxwell::gamma(-0.5) == doctest::Approx(-2.0 * std::sqrt(std::numbers::pi)).epsilon(1e-14));
  CHECK(fmaxwell::gamma(2.75) == doctest::Approx(oracle::frozen::gamma_2_75).epsilon(1e-14));
  CHECK(std::isinf(fmaxwell::gamma(180.0)));
}

TEST_CASE("poles") {
  CHECK_THROWS_AS(fmaxwell::gamma(0.0), DomainError);
  CHECK_THROWS_AS(fmaxwell::gamma(-3.0), DomainError);
  CHECK_THROWS_AS(log_abs_gamma(-2.0), DomainError);
  CHECK(reciprocal_gamma(0.0) == 0.0);
  CHECK(reciprocal_gamma(-7.0) == 0.0);
  CHECK(reciprocal_gamma(0.01) == doctest::Approx(oracle::frozen::inv_gamma_001).epsilon(1e-13));
}

TEST_CASE("log_abs_gamma agrees with lgamma, including the large-argument branch") {
  for (double x : {-7.3, -0.4, 0.1, 0.5, 3.2, 50.0, 99.9, 100.5, 250.0, 1e4}) {
    CHECK(log_abs_gamma(x) == doctest::Approx(std::lgamma(x)).epsilon(1e-13));
  }
}

TEST_CASE("sin_pi is exact at integers and half-integers") {
  CHECK(sin_pi(3.0) == 0.0);
  CHECK(sin_pi(-12.0) == 0.0);
  CHECK(sin_pi(0.5) == 1.0);
  CHECK(sin_pi(-1.5) == 1.0);
  CHECK(sin_pi(0.25) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
}
