#pragma once

// Gamma function family used by the Mittag-Leffler evaluators and the
// operator identities. Lanczos approximation (g = 607/128, 15 terms) on x >= 1/2,
// reflection below.

namespace fmaxwell {

// sin(pi x) with exact argument reduction, so sin_pi(n) == 0 for integer n.
double sin_pi(double x);

// Gamma(x). Throws DomainError at the poles x = 0, -1, -2, ...
// Returns +inf past the overflow point (x > ~171.6).
double gamma(double x);

// 1/Gamma(x); exactly 0 at the poles.
double reciprocal_gamma(double x);

// ln|Gamma(x)|. Throws DomainError at the poles.
double log_abs_gamma(double x);

// True when x is 0 or a negative integer.
bool is_gamma_pole(double x);

}  // namespace fmaxwell
