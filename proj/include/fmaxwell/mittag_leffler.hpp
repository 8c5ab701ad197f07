#pragma once

#include <cstddef>
#include <string_view>

namespace fmaxwell {

// Two-parameter Mittag-Leffler function
//
//   E_{alpha,beta}(x) = sum_k x^k / Gamma(alpha k + beta)
//
// for real x <= 0, 0 < alpha <= 1. Three evaluators cover the negative axis:
//
//   Series      direct power series, compensated summation; small |x|.
//   Spectral    E_alpha(-y) = int_0^inf exp(-r y^(1/alpha)) K_alpha(r) dr with
//               K_alpha(r) = sin(alpha pi) r^(alpha-1) /
//                            (pi (r^(2 alpha) + 2 r^alpha cos(alpha pi) + 1)),
//               trapezoid rule after r = e^u; intermediate |x|, beta = 1.
//   Asymptotic  E_alpha(-y) ~ sum_{n>=1} (-1)^(n-1) y^(-n) / Gamma(1 - alpha n);
//               large |x|, beta = 1.
//
// ml_eval() picks the regime. All functions are pure and thread-safe.

enum class MLRegime { Series, Spectral, Asymptotic, Exponential };

std::string_view to_string(MLRegime regime);

struct MLQuery {
  double alpha = 1.0;
  double beta = 1.0;
  double x = 0.0;
  double tol = 1e-12;  // absolute
};

struct MLResult {
  double value = 0.0;
  MLRegime regime = MLRegime::Series;
  double est_error = 0.0;
};

struct MLConfig {
  // |x| <= min(series_limit, series_exponent_limit^alpha) uses the series.
  // The second bound keeps the cancellation factor ~exp(|x|^(1/alpha)) below
  // exp(series_exponent_limit).
  double series_limit = 5.0;
  double series_exponent_limit = 8.0;
  // |x| >= asymptotic_limit uses the asymptotic series.
  double asymptotic_limit = 50.0;

  std::size_t max_series_terms = 5000;
  std::size_t max_asymptotic_terms = 400;

  // Spectral trapezoid: initial panel count and maximum number of halvings.
  std::size_t spectral_initial_nodes = 64;
  int spectral_max_refinements = 20;
};

struct RegimeThresholds {
  double series_upper;      // |x| at or below: Series
  double asymptotic_lower;  // |x| at or above: Asymptotic
};

RegimeThresholds regime_thresholds(double alpha, const MLConfig& cfg = {});

struct Band {
  double lo;
  double hi;
};

// |x| intervals where two adjacent regimes are both valid:
// [series_upper/2, series_upper] and [asymptotic_lower, 2 asymptotic_lower].
struct OverlapBands {
  Band series_spectral;
  Band spectral_asymptotic;
};

OverlapBands overlap_bands(double alpha, const MLConfig& cfg = {});

// Any real x. Stops once the next term is below q.tol and terms are shrinking;
// est_error is that first omitted term. Throws NonConvergent past max_terms.
MLResult ml_series(const MLQuery& q, std::size_t max_terms = 5000);

// beta = 1, 0 < alpha < 1, x <= 0. Throws QuadratureFailure when trapezoid
// halving does not settle below tol.
MLResult ml_spectral(double alpha, double x, double tol = 1e-12, const MLConfig& cfg = {});

// beta = 1, |x| >= 1, x < 0. Truncates at n_terms or before the terms start
// growing; Gamma poles contribute nothing. est_error is the first omitted
// non-zero term.
MLResult ml_asymptotic(double alpha, double x, std::size_t n_terms);

// Regime dispatcher, x <= 0.
MLResult ml_eval(const MLQuery& q, const MLConfig& cfg = {});

// Convenience: E_{alpha,1}(x) value only.
double mittag_leffler(double alpha, double x);

}  // namespace fmaxwell
