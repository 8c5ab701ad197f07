#include "fmaxwell/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fmaxwell/errors.hpp"
#include "fmaxwell/gamma.hpp"

namespace fmaxwell {

bool CMReport::all_passed() const {
  return std::all_of(passed.begin(), passed.end(), [](bool b) { return b; });
}

CMReport check_complete_monotonicity(const RealFunction& fn, const GridSpec& g, int max_order, double tol) {
  if (max_order < 1 || max_order > 6) throw DomainError("complete-monotonicity check supports orders 1..6");
  validate(g);
  if (g.kind != GridKind::Linear) throw GridError("complete-monotonicity check needs a uniform (linear) grid");
  if (g.n_points < static_cast<std::size_t>(max_order) + 2) {
    throw GridError("complete-monotonicity check of order " + std::to_string(max_order) + " needs at least " +
                    std::to_string(max_order + 2) + " points");
  }
  if (!fn) throw DomainError("complete-monotonicity check needs a function");

  std::vector<double> diff;
  diff.reserve(g.n_points);
  for (double t : grid_nodes(g)) diff.push_back(fn(t));

  CMReport report;
  report.max_order_checked = max_order;
  double sign = 1.0;
  for (int m = 1; m <= max_order; ++m) {
    sign = -sign;
    for (std::size_t i = 0; i + 1 < diff.size(); ++i) diff[i] = diff[i + 1] - diff[i];
    diff.pop_back();
    double worst = 0.0;
    for (double d : diff) {
      if (sign * d < -tol) worst = std::max(worst, std::fabs(d));
    }
    report.passed.push_back(worst == 0.0);
    report.worst_violation.push_back(worst);
  }
  return report;
}

std::vector<MatchRow> asymptotic_matching(double nu, const RelaxationScenario& sc, std::vector<double> t_points) {
  std::sort(t_points.begin(), t_points.end());
  std::vector<MatchRow> rows;
  rows.reserve(t_points.size());
  for (double t : t_points) {
    const double exact = stress_relaxation(t, nu, sc);
    const double asym = asymptotic_stress(t, nu, sc);
    rows.push_back({t, exact, asym, std::fabs(exact - asym) / std::fabs(exact)});
  }
  return rows;
}

std::vector<ProbeRow> singular_limit_probe(const std::vector<double>& nu_list, double t,
                                           const RelaxationScenario& sc) {
  std::vector<ProbeRow> rows;
  rows.reserve(nu_list.size());
  for (double nu : nu_list) {
    if (nu == 1.0) {
      rows.push_back({nu, stress_relaxation_nu1(t, sc), 0.0, 0.0, std::numeric_limits<double>::infinity()});
      continue;
    }
    rows.push_back({nu, stress_relaxation(t, nu, sc), asymptotic_stress(t, nu, sc), reciprocal_gamma(1.0 - nu),
                    gamma(1.0 - nu)});
  }
  return rows;
}

}  // namespace fmaxwell
