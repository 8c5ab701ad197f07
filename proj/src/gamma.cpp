#include "fmaxwell/gamma.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "fmaxwell/errors.hpp"

namespace fmaxwell {
namespace {

constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczosCoef = {
    0.99999999999999709182,   57.156235665862923517,    -59.597960355475491248,
    14.136097974741747174,    -0.49191381609762019978,  0.33994649984811888699e-4,
    0.46523628927048575665e-4, -0.98374475304879564677e-4, 0.15808870322491248884e-3,
    -0.21026444172410488319e-3, 0.21743961811521264320e-3, -0.16431810653676389022e-3,
    0.84418223983852743293e-4, -0.26190838401581408670e-4, 0.36899182659531622704e-5};

// Lanczos series A_g(x) for Gamma(x) = sqrt(2 pi) t^(x-1/2) e^(-t) A_g(x),
// t = x + g - 1/2. Valid for x >= 1/2.
double lanczos_sum(double x) {
  double sum = kLanczosCoef[0];
  for (std::size_t i = 1; i < kLanczosCoef.size(); ++i) {
    sum += kLanczosCoef[i] / (x - 1.0 + static_cast<double>(i));
  }
  return sum;
}

double gamma_right(double x) {
  if (x > 171.624376956302725) return std::numeric_limits<double>::infinity();
  // Small integers: factorial, exact in double up to 22!.
  if (x <= 23.0 && x == std::nearbyint(x)) {
    double fact = 1.0;
    for (double k = 2.0; k < x; k += 1.0) fact *= k;
    return fact;
  }
  const double t = x + kLanczosG - 0.5;
  // Split the power so t^(x-1/2) does not overflow before Gamma itself does.
  const double half_power = std::pow(t, 0.5 * (x - 0.5));
  const double sqrt_two_pi = std::sqrt(2.0 * std::numbers::pi);
  return sqrt_two_pi * half_power * (half_power * std::exp(-t)) * lanczos_sum(x);
}

double log_gamma_right(double x) {
  const double t = x + kLanczosG - 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (x - 0.5) * std::log(t) - t +
         std::log(lanczos_sum(x));
}

}  // namespace

bool is_gamma_pole(double x) { return x <= 0.0 && x == std::nearbyint(x); }

double sin_pi(double x) {
  if (!std::isfinite(x)) return std::numeric_limits<double>::quiet_NaN();
  // r in [-1, 1], exact in floating point.
  double r = x - 2.0 * std::nearbyint(0.5 * x);
  double sign = 1.0;
  if (r < 0.0) {
    r = -r;
    sign = -1.0;
  }
  if (r > 0.5) r = 1.0 - r;
  if (r == 0.0) return 0.0;
  return sign * std::sin(std::numbers::pi * r);
}

double gamma(double x) {
  if (std::isnan(x)) return x;
  if (is_gamma_pole(x)) throw DomainError("gamma: pole at x = " + std::to_string(x));
  if (x >= 0.5) return gamma_right(x);
  return std::numbers::pi / (sin_pi(x) * gamma_right(1.0 - x));
}

double reciprocal_gamma(double x) {
  if (std::isnan(x)) return x;
  if (is_gamma_pole(x)) return 0.0;
  if (x >= 0.5) return 1.0 / gamma_right(x);
  return sin_pi(x) * gamma_right(1.0 - x) / std::numbers::pi;
}

double log_abs_gamma(double x) {
  if (std::isnan(x)) return x;
  if (is_gamma_pole(x)) throw DomainError("log_abs_gamma: pole at x = " + std::to_string(x));
  if (x >= 0.5) {
    // Direct product is more accurate than the log form where it cannot overflow.
    if (x < 100.0) return std::log(gamma_right(x));
    return log_gamma_right(x);
  }
  return std::log(std::numbers::pi) - std::log(std::fabs(sin_pi(x))) - log_abs_gamma(1.0 - x);
}

}  // namespace fmaxwell
