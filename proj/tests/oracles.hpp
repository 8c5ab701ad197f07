#pragma once

// Reference values and independent evaluators used only by tests. None of
// these go through the library's own Gamma or Mittag-Leffler code.

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <numbers>
#include <vector>

namespace oracle {

// Values computed with mpmath at 40 digits.
namespace frozen {
inline constexpr double e_erfc_1 = 0.4275835761558070044;            // e * erfc(1) = E_{1/2}(-1)
inline constexpr double erfcx_quarter = 0.7703465477309967439;       // E_{1/2}(-0.25)
inline constexpr double erfcx_half = 0.6156903441929258749;          // E_{1/2}(-0.5)
inline constexpr double erfcx_two = 0.2553956763105057439;           // E_{1/2}(-2)
inline constexpr double gamma_2_75 = 1.608359421985545659;           // Gamma(2.75)
inline constexpr double log_power_beta2_nu025 = 4.182629348933035625;  // Gamma(3)/Gamma(2.75) 2^1.75
inline constexpr double ml_075_minus4 = 0.08882293631274390198;      // E_{3/4}(-4)
inline constexpr double ml_05_sqrt_ln10 = 0.3187568930680293847;     // E_{1/2}(-sqrt(ln 10))
inline constexpr double ml_09_minus3_7 = 0.05785273161524308439;     // E_{0.9}(-3.7)
inline constexpr double ml_05_minus50 = 0.01128153626532377250;      // E_{1/2}(-50)
inline constexpr double ml_05_minus100 = 0.005641613782989432904;    // E_{1/2}(-100)
inline constexpr double ml_025_minus1 = 0.4638527608017132869;
inline constexpr double ml_025_minus2 = 0.2981017936936576037;
inline constexpr double ml_075_minus1 = 0.3931083028157540618;
inline constexpr double ml_075_minus2 = 0.2020784834129544543;
inline constexpr double ml_09_minus1 = 0.3760660214246418812;
inline constexpr double ml_09_minus2 = 0.1635283000169300489;
inline constexpr double ml_05_beta2_minus1 = 0.5559627432513195783;   // E_{1/2,2}(-1)
inline constexpr double ml_05_beta05_minus1 = 0.1366060073919492825;  // E_{1/2,1/2}(-1)
inline constexpr double inv_gamma_001 = 0.010057065285003850807;      // 1/Gamma(0.01)
}  // namespace frozen

// E_{1/2}(-z) = exp(z^2) erfc(z), z >= 0.
inline double ml_half(double z) { return std::exp(z * z) * std::erfc(z); }

// E_{alpha,beta}(x) by the power series in 50-digit binary floating point.
inline double ml_series_mp(double alpha, double beta, double x, int terms = 600) {
  using mp = boost::multiprecision::cpp_bin_float_50;
  mp sum = 0;
  mp power = 1;
  const mp xm = x;
  for (int k = 0; k < terms; ++k) {
    sum += power / boost::math::tgamma(mp(alpha) * k + mp(beta));
    power *= xm;
  }
  return static_cast<double>(sum);
}

// Brute-force spectral integral on r in (0, inf) with a very fine log grid.
inline double ml_spectral_brute(double alpha, double y) {
  const double s = std::sin(alpha * std::numbers::pi);
  const double c = std::cos(alpha * std::numbers::pi);
  const double scale = std::pow(y, 1.0 / alpha);
  const double du = 1e-3;
  double sum = 0.0;
  for (double u = -60.0 / alpha; u < 60.0 / alpha; u += du) {
    const double r = std::exp(u);
    const double ra = std::pow(r, alpha);
    sum += std::exp(-r * scale) * s / std::numbers::pi * ra / (ra * ra + 2.0 * ra * c + 1.0);
  }
  return sum * du;
}

}  // namespace oracle
