#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace fmaxwell {

// Parameters of the Hadamard-type operator
//
//   O_nu f(t) = (E/theta)^(-nu) / Gamma(1-nu)
//               * int_{t0}^{t} ln^(-nu)((eta0+theta t)/(eta0+theta tau))
//                              ((eta0+theta tau)/E) f'(tau) E/(eta0+theta tau) dtau,
//
// t0 = (1 - eta0)/theta. Under s = (E/theta) ln(eta0 + theta t) it is the
// Caputo derivative of order nu of g(s) = f(t(s)); at nu = 1 it is
// ((eta0 + theta t)/E) d/dt.
struct OperatorParams {
  double nu = 0.5;     // (0, 1]
  double E = 1.0;      // elastic modulus, > 0
  double theta = 1.0;  // strain-hardening coefficient, > 0
  double eta0 = 1.0;   // initial viscosity, >= 0
};

// Throws DomainError on parameters outside their ranges.
void validate(const OperatorParams& p);

// Lower limit of the operator integral; eta0 + theta * t_start == 1.
double start_time(const OperatorParams& p);

// ln(eta0 + theta t), accurate near t_start. Throws DomainError for t < t_start.
double log_viscosity(double t, const OperatorParams& p);

struct QuadratureConfig {
  std::size_t n_nodes = 2048;  // L1 intervals on [0, s_eval]; >= 8
  int refinement_levels = 1;   // grids n, 2n, ..., 2^(levels-1) n
  double tol = 1e-6;           // agreement required between the last two grids
  // Starting corrections that make the L1 sum exact on s^(k nu) for
  // k nu < 1 - nu (at most this many exponents); 0 gives plain L1.
  int start_corrections = 3;
};

void validate(const QuadratureConfig& q);

// s = (E/theta) ln(eta0 + theta t). Throws DomainError for t < t_start.
double to_transformed_time(double t, const OperatorParams& p);

// Inverse of to_transformed_time. Throws DomainError for s < 0.
double from_transformed_time(double s, const OperatorParams& p);

using RealFunction = std::function<double(double)>;

// O_nu f(t_eval), by the L1 scheme on a uniform grid in s. Returns 0 at
// t_eval = t_start for nu < 1. Throws QuadratureFailure when refinement levels
// disagree beyond tol.
double apply_operator(const RealFunction& f, double t_eval, const OperatorParams& p,
                      const QuadratureConfig& q = {});

// Closed form for f = ln^beta(eta0 + theta t):
//   (E/theta)^(-nu) Gamma(beta+1)/Gamma(beta+1-nu) ln^(beta-nu)(eta0 + theta t).
double apply_to_log_power(double beta, double t, const OperatorParams& p);

// Caputo derivative of order nu in (0,1) at the last node of a uniform grid
// with spacing h, from samples values[0..n]. corrections as in QuadratureConfig.
double caputo_l1(std::span<const double> values, double h, double nu, int corrections = 3);

}  // namespace fmaxwell
