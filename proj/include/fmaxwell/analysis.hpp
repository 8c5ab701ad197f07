#pragma once

#include <vector>

#include "fmaxwell/hadamard.hpp"
#include "fmaxwell/models.hpp"

namespace fmaxwell {

// Sign pattern of forward differences: a completely monotone f has
// (-1)^m Delta^m f >= 0 for every order m on every uniform grid.
struct CMReport {
  int max_order_checked = 0;
  std::vector<bool> passed;            // index m-1 for order m
  std::vector<double> worst_violation;  // largest wrong-signed |Delta^m|, 0 if none

  bool all_passed() const;
};

// Linear grids only, n_points >= max_order + 2, 1 <= max_order <= 6.
// A difference counts as wrong-signed when (-1)^m Delta^m < -tol.
CMReport check_complete_monotonicity(const RealFunction& fn, const GridSpec& g, int max_order, double tol);

struct MatchRow {
  double t;
  double exact;
  double asymptotic;
  double rel_error;  // |exact - asymptotic| / |exact|
};

// Exact response against its leading asymptotic term; rows sorted by t.
std::vector<MatchRow> asymptotic_matching(double nu, const RelaxationScenario& sc, std::vector<double> t_points);

struct ProbeRow {
  double nu;
  double exact;
  double asymptotic;
  double amplitude;        // 1/Gamma(1 - nu)
  double gamma_one_minus;  // Gamma(1 - nu); +inf at nu = 1
};

// Exact and asymptotic stress at fixed t for orders approaching 1. nu = 1 is
// accepted and uses the closed form; its asymptotic amplitude is 0.
std::vector<ProbeRow> singular_limit_probe(const std::vector<double>& nu_list, double t, const RelaxationScenario& sc);

}  // namespace fmaxwell
