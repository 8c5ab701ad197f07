#include "fmaxwell/mittag_leffler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "compensated_sum.hpp"
#include "fmaxwell/errors.hpp"
#include "fmaxwell/gamma.hpp"

namespace fmaxwell {
namespace {

void require_order(double alpha, bool allow_one) {
  const bool ok = std::isfinite(alpha) && alpha > 0.0 && (allow_one ? alpha <= 1.0 : alpha < 1.0);
  if (!ok) {
    std::ostringstream msg;
    msg << "Mittag-Leffler order alpha = " << alpha << " outside " << (allow_one ? "(0, 1]" : "(0, 1)");
    throw DomainError(msg.str());
  }
}

void require_tol(double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol)) throw DomainError("tolerance must be positive and finite");
}

// x^k / Gamma(alpha k + beta)
double series_term(double x, std::size_t k, double alpha, double beta) {
  if (k == 0) return beta == 1.0 ? 1.0 : reciprocal_gamma(beta);
  if (x == 0.0) return 0.0;
  const double kd = static_cast<double>(k);
  const double arg = alpha * kd + beta;
  const double log_abs_pow = kd * std::log(std::fabs(x));
  if (arg < 170.0 && log_abs_pow < 700.0) return std::pow(x, kd) * reciprocal_gamma(arg);
  const double sign = (x < 0.0 && (k % 2 == 1)) ? -1.0 : 1.0;
  return sign * std::exp(log_abs_pow - log_abs_gamma(arg));
}

// n-th asymptotic term (-1)^(n-1) y^(-n) / Gamma(1 - alpha n), using
// 1/Gamma(1 - z) = Gamma(z) sin(pi z) / pi with z = alpha n > 0.
double asymptotic_term(double alpha, double log_y, std::size_t n) {
  const double z = alpha * static_cast<double>(n);
  const double sp = sin_pi(z);
  if (sp == 0.0) return 0.0;
  const double log_mag = log_abs_gamma(z) - static_cast<double>(n) * log_y + std::log(std::fabs(sp)) -
                         std::log(std::numbers::pi);
  const double sign = ((n % 2 == 1) ? 1.0 : -1.0) * (sp > 0.0 ? 1.0 : -1.0);
  return sign * std::exp(log_mag);
}

}  // namespace

std::string_view to_string(MLRegime regime) {
  switch (regime) {
    case MLRegime::Series:
      return "series";
    case MLRegime::Spectral:
      return "spectral";
    case MLRegime::Asymptotic:
      return "asymptotic";
    case MLRegime::Exponential:
      return "exponential";
  }
  return "unknown";
}

RegimeThresholds regime_thresholds(double alpha, const MLConfig& cfg) {
  require_order(alpha, true);
  const double series_upper = std::min(cfg.series_limit, std::pow(cfg.series_exponent_limit, alpha));
  return {series_upper, std::max(cfg.asymptotic_limit, series_upper)};
}

OverlapBands overlap_bands(double alpha, const MLConfig& cfg) {
  const RegimeThresholds thr = regime_thresholds(alpha, cfg);
  return {{0.5 * thr.series_upper, thr.series_upper}, {thr.asymptotic_lower, 2.0 * thr.asymptotic_lower}};
}

MLResult ml_series(const MLQuery& q, std::size_t max_terms) {
  require_order(q.alpha, true);
  if (!(q.beta > 0.0) || !std::isfinite(q.beta)) throw DomainError("Mittag-Leffler beta must be positive");
  require_tol(q.tol);
  if (!std::isfinite(q.x)) throw DomainError("Mittag-Leffler argument must be finite");

  detail::CompensatedSum sum;
  double term = series_term(q.x, 0, q.alpha, q.beta);
  for (std::size_t k = 0; k < max_terms; ++k) {
    sum.add(term);
    const double next = series_term(q.x, k + 1, q.alpha, q.beta);
    if (std::fabs(next) < q.tol && std::fabs(next) <= std::fabs(term)) {
      return {sum.value(), MLRegime::Series, std::fabs(next)};
    }
    term = next;
  }
  std::ostringstream msg;
  msg << "Mittag-Leffler series did not converge in " << max_terms << " terms (alpha = " << q.alpha
      << ", x = " << q.x << ")";
  throw NonConvergent(msg.str());
}

MLResult ml_spectral(double alpha, double x, double tol, const MLConfig& cfg) {
  require_order(alpha, false);
  require_tol(tol);
  if (!(x <= 0.0) || !std::isfinite(x)) throw DomainError("spectral representation needs finite x <= 0");

  const double y = -x;
  const double scale = y == 0.0 ? 0.0 : std::pow(y, 1.0 / alpha);
  const double sin_a = sin_pi(alpha);
  // 1 + cos(alpha pi) = 2 cos^2(alpha pi / 2), written to stay accurate near alpha = 1.
  const double cos_half = sin_pi(0.5 * (1.0 - alpha));
  const double one_plus_cos = 2.0 * cos_half * cos_half;

  // After r = e^u the integrand is
  //   exp(-scale e^u) sin(alpha pi) / (2 pi (cosh(alpha u) + cos(alpha pi)))
  // and cosh(alpha u) + cos(alpha pi) = 2 sinh^2(alpha u / 2) + 1 + cos(alpha pi).
  auto integrand = [&](double u) {
    const double sh = std::sinh(0.5 * alpha * u);
    const double damping = scale == 0.0 ? 1.0 : std::exp(-scale * std::exp(u));
    return damping * sin_a / (2.0 * std::numbers::pi * (2.0 * sh * sh + one_plus_cos));
  };

  // Tails: the kernel part is bounded by (2 sin(alpha pi)/pi) e^(-alpha |u|).
  const double eps_tail = std::max(1e-3 * tol, 1e-300);
  const double half_width =
      std::max(std::log(2.0 * sin_a / (std::numbers::pi * alpha * eps_tail)), std::log(4.0) + 1.0) / alpha;
  double u_lo = -half_width;
  double u_hi = half_width;
  if (scale > 0.0) {
    const double cutoff = -std::log(eps_tail) + 5.0;
    u_hi = std::min(u_hi, std::log(cutoff / scale));
    if (u_hi <= u_lo + 1.0) u_lo = u_hi - half_width;
  }

  // The kernel peaks at u = 0 with half-width about 2 cos(alpha pi / 2) / alpha,
  // which shrinks to nothing as alpha -> 1. Trapezoid in v with u = c sinh(v)
  // puts nodes on that scale near the peak and still reaches the tails.
  const double c = std::min(1.0, 2.0 * cos_half / alpha);
  auto mapped = [&](double v) { return integrand(c * std::sinh(v)) * c * std::cosh(v); };
  const double v_lo = std::asinh(u_lo / c);
  const double v_hi = std::asinh(u_hi / c);

  std::size_t panels = std::max<std::size_t>(cfg.spectral_initial_nodes, 2);
  double h = (v_hi - v_lo) / static_cast<double>(panels);
  detail::CompensatedSum first;
  first.add(0.5 * mapped(v_lo));
  first.add(0.5 * mapped(v_hi));
  for (std::size_t i = 1; i < panels; ++i) first.add(mapped(v_lo + static_cast<double>(i) * h));
  double estimate = h * first.value();

  double change = std::numeric_limits<double>::infinity();
  for (int level = 1; level <= cfg.spectral_max_refinements; ++level) {
    detail::CompensatedSum mids;
    for (std::size_t i = 0; i < panels; ++i) mids.add(mapped(v_lo + (static_cast<double>(i) + 0.5) * h));
    const double refined = 0.5 * estimate + 0.5 * h * mids.value();
    change = std::fabs(refined - estimate);
    estimate = refined;
    panels *= 2;
    h *= 0.5;
    if (level >= 2 && change <= tol) return {estimate, MLRegime::Spectral, change};
  }
  std::ostringstream msg;
  msg << "spectral quadrature for E_" << alpha << "(" << x << ") stalled at change " << change << " > tol "
      << tol;
  throw QuadratureFailure(msg.str());
}

MLResult ml_asymptotic(double alpha, double x, std::size_t n_terms) {
  require_order(alpha, true);
  if (!std::isfinite(x) || x > -1.0) throw DomainError("asymptotic series needs x <= -1");
  if (n_terms == 0) throw DomainError("asymptotic series needs at least one term");

  const double log_y = std::log(-x);
  detail::CompensatedSum sum;
  double last_added = std::numeric_limits<double>::infinity();
  for (std::size_t n = 1; n <= n_terms; ++n) {
    const double c = asymptotic_term(alpha, log_y, n);
    if (c == 0.0) continue;
    if (std::fabs(c) > last_added) return {sum.value(), MLRegime::Asymptotic, std::fabs(c)};
    sum.add(c);
    last_added = std::fabs(c);
  }
  // First omitted non-zero term; poles are at most 1/alpha indices apart.
  double omitted = 0.0;
  const auto lookahead = static_cast<std::size_t>(std::ceil(1.0 / alpha)) + 1;
  for (std::size_t n = n_terms + 1; n <= n_terms + lookahead; ++n) {
    omitted = asymptotic_term(alpha, log_y, n);
    if (omitted != 0.0) break;
  }
  return {sum.value(), MLRegime::Asymptotic, std::fabs(omitted)};
}

MLResult ml_eval(const MLQuery& q, const MLConfig& cfg) {
  require_order(q.alpha, true);
  if (!(q.beta > 0.0) || !std::isfinite(q.beta)) throw DomainError("Mittag-Leffler beta must be positive");
  require_tol(q.tol);
  if (!std::isfinite(q.x) || q.x > 0.0) throw DomainError("ml_eval is defined for finite x <= 0");

  if (q.x == 0.0) {
    return {q.beta == 1.0 ? 1.0 : reciprocal_gamma(q.beta), MLRegime::Series, 0.0};
  }
  if (q.alpha == 1.0 && q.beta == 1.0) return {std::exp(q.x), MLRegime::Exponential, 0.0};

  const double y = -q.x;
  const RegimeThresholds thr = regime_thresholds(q.alpha, cfg);
  if (y <= thr.series_upper) return ml_series(q, cfg.max_series_terms);

  if (q.beta != 1.0 || q.alpha == 1.0) {
    std::ostringstream msg;
    msg << "E_{" << q.alpha << "," << q.beta << "}(" << q.x
        << ") is outside the series range and only beta = 1, alpha < 1 is supported there";
    throw DomainError(msg.str());
  }
  if (y < thr.asymptotic_lower) return ml_spectral(q.alpha, q.x, q.tol, cfg);

  MLResult asym = ml_asymptotic(q.alpha, q.x, cfg.max_asymptotic_terms);
  if (asym.est_error <= q.tol) return asym;
  return ml_spectral(q.alpha, q.x, q.tol, cfg);
}

double mittag_leffler(double alpha, double x) { return ml_eval({alpha, 1.0, x, 1e-12}).value; }

}  // namespace fmaxwell
