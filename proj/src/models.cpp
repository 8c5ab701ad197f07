#include "fmaxwell/models.hpp"

#include <cmath>
#include <sstream>

#include "fmaxwell/errors.hpp"
#include "fmaxwell/gamma.hpp"
#include "fmaxwell/mittag_leffler.hpp"

namespace fmaxwell {

void validate(const RelaxationScenario& sc) {
  validate(sc.with_order(1.0));
  if (!(sc.sigma0 > 0.0) || !std::isfinite(sc.sigma0)) throw DomainError("initial stress sigma0 must be positive");
}

double stress_relaxation(double t, double nu, const RelaxationScenario& sc) {
  validate(sc);
  const OperatorParams p = sc.with_order(nu);
  validate(p);
  const double L = log_viscosity(t, p);
  if (L == 0.0) return sc.sigma0;
  const double x = -std::pow(sc.E / sc.theta * L, nu);
  return sc.sigma0 * ml_eval({nu, 1.0, x, 1e-13}).value;
}

double stress_relaxation_nu1(double t, const RelaxationScenario& sc) {
  validate(sc);
  const double L = log_viscosity(t, sc.with_order(1.0));
  return sc.sigma0 * std::exp(-sc.E / sc.theta * L);
}

double asymptotic_stress(double t, double nu, const RelaxationScenario& sc) {
  validate(sc);
  if (!(nu > 0.0 && nu < 1.0)) {
    throw DomainError("asymptotic stress needs 0 < nu < 1; the amplitude 1/Gamma(1-nu) degenerates at nu = 1");
  }
  const double L = log_viscosity(t, sc.with_order(nu));
  if (!(L > 0.0)) throw DomainError("asymptotic stress is singular at t = t_start");
  return sc.sigma0 * std::pow(sc.E / sc.theta * L, -nu) * reciprocal_gamma(1.0 - nu);
}

double classical_fractional_maxwell(double t, double nu) {
  if (!(t >= 0.0)) throw DomainError("classical fractional Maxwell response needs t >= 0");
  return ml_eval({nu, 1.0, -std::pow(t, nu), 1e-13}).value;
}

void validate(const GridSpec& g) {
  if (!std::isfinite(g.t_min) || !std::isfinite(g.t_max)) throw GridError("grid bounds must be finite");
  if (!(g.t_min < g.t_max)) throw GridError("grid needs t_min < t_max");
  if (g.n_points < 2) throw GridError("grid needs at least 2 points");
  if (g.kind == GridKind::Logarithmic && !(g.t_min > 0.0)) throw GridError("logarithmic grid needs t_min > 0");
}

std::vector<double> grid_nodes(const GridSpec& g) {
  validate(g);
  std::vector<double> nodes(g.n_points);
  const double last = static_cast<double>(g.n_points - 1);
  if (g.kind == GridKind::Linear) {
    const double step = (g.t_max - g.t_min) / last;
    for (std::size_t i = 0; i < g.n_points; ++i) nodes[i] = g.t_min + static_cast<double>(i) * step;
  } else {
    const double lo = std::log(g.t_min);
    const double step = (std::log(g.t_max) - lo) / last;
    for (std::size_t i = 0; i < g.n_points; ++i) nodes[i] = std::exp(lo + static_cast<double>(i) * step);
  }
  nodes.front() = g.t_min;
  nodes.back() = g.t_max;
  return nodes;
}

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Modified:
      return "modified";
    case ModelKind::ModifiedNu1:
      return "nu1";
    case ModelKind::Asymptotic:
      return "asymptotic";
    case ModelKind::ClassicalFractional:
      return "classical";
  }
  return "unknown";
}

double evaluate_model(const ModelSpec& model, double t) {
  switch (model.kind) {
    case ModelKind::Modified:
      return stress_relaxation(t, model.nu, model.scenario);
    case ModelKind::ModifiedNu1:
      return stress_relaxation_nu1(t, model.scenario);
    case ModelKind::Asymptotic:
      return asymptotic_stress(t, model.nu, model.scenario);
    case ModelKind::ClassicalFractional:
      return model.scenario.sigma0 * classical_fractional_maxwell(t, model.nu);
  }
  throw DomainError("unknown model kind");
}

SampledCurve sample_curve(const ModelSpec& model, const GridSpec& g) {
  SampledCurve curve{grid_nodes(g), {}, model, g};
  curve.values.reserve(curve.times.size());
  for (double t : curve.times) curve.values.push_back(evaluate_model(model, t));
  return curve;
}

}  // namespace fmaxwell
