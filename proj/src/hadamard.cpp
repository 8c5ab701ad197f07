#include "fmaxwell/hadamard.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "compensated_sum.hpp"
#include "fmaxwell/errors.hpp"
#include "fmaxwell/gamma.hpp"

namespace fmaxwell {
namespace {

constexpr int kMaxCorrections = 3;

// (k+1)^(1-nu) - k^(1-nu) without cancellation for large k.
double l1_weight(std::size_t k, double nu) {
  if (k == 0) return 1.0;
  const double kd = static_cast<double>(k);
  return std::pow(kd, 1.0 - nu) * std::expm1((1.0 - nu) * std::log1p(1.0 / kd));
}

// Unit-spacing L1 sum at node n (without the 1/Gamma(2-nu) factor).
double l1_sum(std::span<const double> values, std::span<const double> weights) {
  const std::size_t n = values.size() - 1;
  detail::CompensatedSum acc;
  for (std::size_t j = 0; j < n; ++j) acc.add(weights[n - 1 - j] * (values[j + 1] - values[j]));
  return acc.value();
}

std::vector<double> correction_exponents(double nu, int max_count) {
  std::vector<double> exps;
  for (int k = 1; static_cast<int>(exps.size()) < std::min(max_count, kMaxCorrections); ++k) {
    const double e = k * nu;
    if (e >= 1.0 - nu - 1e-12) break;
    if (std::fabs(e - std::nearbyint(e)) > 1e-12) exps.push_back(e);
  }
  return exps;
}

// Solves the m x m system A w = b (m <= 3) by Gaussian elimination with
// partial pivoting.
template <std::size_t M>
std::array<double, M> solve_small(std::array<std::array<double, M>, M> a, std::array<double, M> b,
                                  std::size_t m) {
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < m; ++r) {
      if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
    }
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t r = col + 1; r < m; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < m; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::array<double, M> x{};
  for (std::size_t i = m; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < m; ++c) s -= a[i][c] * x[c];
    x[i] = s / a[i][i];
  }
  return x;
}

// nu = 1: ((eta0 + theta t)/E) f'(t), second-order differences.
double first_order_operator(const RealFunction& f, double t, const OperatorParams& p) {
  const double t0 = start_time(p);
  const double h = std::cbrt(std::numeric_limits<double>::epsilon()) * std::max(1.0, std::fabs(t));
  double deriv;
  if (t - h >= t0) {
    deriv = (f(t + h) - f(t - h)) / (2.0 * h);
  } else {
    deriv = (-3.0 * f(t) + 4.0 * f(t + h) - f(t + 2.0 * h)) / (2.0 * h);
  }
  return std::exp(log_viscosity(t, p)) / p.E * deriv;
}

double l1_on_grid(const RealFunction& f, double s_eval, double t_eval, std::size_t n, const OperatorParams& p,
                  int corrections) {
  std::vector<double> g(n + 1);
  const double h = s_eval / static_cast<double>(n);
  for (std::size_t j = 0; j <= n; ++j) {
    const double t = j == 0 ? start_time(p) : (j == n ? t_eval : from_transformed_time(j * h, p));
    g[j] = f(t);
    if (!std::isfinite(g[j])) {
      std::ostringstream msg;
      msg << "operator argument is not finite at t = " << t;
      throw DomainError(msg.str());
    }
  }
  return caputo_l1(g, h, p.nu, corrections);
}

}  // namespace

void validate(const OperatorParams& p) {
  auto fail = [](const char* what) { throw DomainError(what); };
  if (!(p.nu > 0.0 && p.nu <= 1.0)) fail("operator order nu must lie in (0, 1]");
  if (!(p.E > 0.0) || !std::isfinite(p.E)) fail("elastic modulus E must be positive");
  if (!(p.theta > 0.0) || !std::isfinite(p.theta)) fail("strain-hardening coefficient theta must be positive");
  if (!(p.eta0 >= 0.0) || !std::isfinite(p.eta0)) fail("initial viscosity eta0 must be non-negative");
}

void validate(const QuadratureConfig& q) {
  if (q.n_nodes < 8) throw DomainError("quadrature needs at least 8 nodes");
  if (q.refinement_levels < 1) throw DomainError("quadrature needs at least one refinement level");
  if (!(q.tol > 0.0)) throw DomainError("quadrature tolerance must be positive");
  if (q.start_corrections < 0) throw DomainError("start_corrections must be non-negative");
}

double start_time(const OperatorParams& p) { return (1.0 - p.eta0) / p.theta; }

double log_viscosity(double t, const OperatorParams& p) {
  // eta0 + theta t = 1 + (eta0 - 1 + theta t)
  double excess = (p.eta0 - 1.0) + p.theta * t;
  const double slack = 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, p.eta0);
  if (excess < 0.0 && excess >= -slack) excess = 0.0;
  if (!(excess >= 0.0)) {
    std::ostringstream msg;
    msg << "t = " << t << " precedes the operator start time " << start_time(p);
    throw DomainError(msg.str());
  }
  return std::log1p(excess);
}

double to_transformed_time(double t, const OperatorParams& p) { return p.E / p.theta * log_viscosity(t, p); }

double from_transformed_time(double s, const OperatorParams& p) {
  if (!(s >= 0.0)) throw DomainError("transformed time must be non-negative");
  return (std::expm1(s * p.theta / p.E) + (1.0 - p.eta0)) / p.theta;
}

double caputo_l1(std::span<const double> values, double h, double nu, int corrections) {
  if (values.size() < 2) throw DomainError("L1 scheme needs at least two samples");
  if (!(nu > 0.0 && nu < 1.0)) throw DomainError("L1 scheme needs 0 < nu < 1");
  if (!(h > 0.0)) throw DomainError("L1 grid spacing must be positive");
  const std::size_t n = values.size() - 1;

  std::vector<double> weights(n);
  for (std::size_t k = 0; k < n; ++k) weights[k] = l1_weight(k, nu);
  double total = l1_sum(values, weights);

  const std::vector<double> exps = correction_exponents(nu, corrections);
  const std::size_t m = std::min(exps.size(), n - 1);
  if (m > 0) {
    // Weights w_j on (g_j - g_0), j = 1..m, chosen so the corrected sum is
    // exact for g(s) = s^e at every correction exponent e.
    std::array<std::array<double, kMaxCorrections>, kMaxCorrections> a{};
    std::array<double, kMaxCorrections> rhs{};
    std::vector<double> power(n + 1);
    const double nd = static_cast<double>(n);
    for (std::size_t r = 0; r < m; ++r) {
      const double e = exps[r];
      for (std::size_t j = 0; j <= n; ++j) power[j] = std::pow(static_cast<double>(j), e);
      const double exact = gamma(e + 1.0) * gamma(2.0 - nu) / gamma(e + 1.0 - nu) * std::pow(nd, e - nu);
      rhs[r] = exact - l1_sum(power, weights);
      for (std::size_t j = 0; j < m; ++j) a[r][j] = power[j + 1];
    }
    const auto w = solve_small(a, rhs, m);
    for (std::size_t j = 0; j < m; ++j) total += w[j] * (values[j + 1] - values[0]);
  }
  return total * std::pow(h, -nu) / gamma(2.0 - nu);
}

double apply_operator(const RealFunction& f, double t_eval, const OperatorParams& p, const QuadratureConfig& q) {
  validate(p);
  validate(q);
  if (!f) throw DomainError("operator needs a function");
  const double s_eval = to_transformed_time(t_eval, p);

  if (p.nu == 1.0) return first_order_operator(f, t_eval, p);
  if (s_eval == 0.0) return 0.0;

  double previous = std::numeric_limits<double>::quiet_NaN();
  double current = 0.0;
  std::size_t n = q.n_nodes;
  for (int level = 0; level < q.refinement_levels; ++level, n *= 2) {
    previous = current;
    current = l1_on_grid(f, s_eval, t_eval, n, p, q.start_corrections);
  }
  if (q.refinement_levels >= 2 && std::fabs(current - previous) > q.tol * std::max(1.0, std::fabs(current))) {
    std::ostringstream msg;
    msg << "L1 refinement did not settle: " << previous << " vs " << current << " (tol " << q.tol << ")";
    throw QuadratureFailure(msg.str());
  }
  return current;
}

double apply_to_log_power(double beta, double t, const OperatorParams& p) {
  validate(p);
  if (!(beta > -1.0) || beta == 0.0 || !std::isfinite(beta)) {
    throw DomainError("log-power rule needs beta > -1, beta != 0");
  }
  const double shifted = beta + 1.0 - p.nu;
  if (is_gamma_pole(shifted)) throw DomainError("log-power rule: Gamma(beta + 1 - nu) has a pole");
  const double L = log_viscosity(t, p);
  if (!(L > 0.0)) throw DomainError("log-power rule needs t > t_start");
  return std::pow(p.E / p.theta, -p.nu) * gamma(beta + 1.0) * reciprocal_gamma(shifted) * std::pow(L, beta - p.nu);
}

}  // namespace fmaxwell
