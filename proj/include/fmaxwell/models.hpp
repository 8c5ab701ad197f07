#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "fmaxwell/hadamard.hpp"

namespace fmaxwell {

// Constant-strain relaxation test for the fractional Maxwell model with
// time-varying viscosity eta(t) = eta0 + theta t. The stress is reported in
// units of its initial value sigma0.
struct RelaxationScenario {
  double E = 1.0;
  double theta = 1.0;
  double eta0 = 1.0;
  double sigma0 = 1.0;
  double epsilon0 = 1.0;  // held strain; metadata only

  OperatorParams with_order(double nu) const { return {nu, E, theta, eta0}; }
};

void validate(const RelaxationScenario& sc);

// sigma0 E_nu(-(E/theta)^nu ln^nu(eta0 + theta t)), t >= t_start.
double stress_relaxation(double t, double nu, const RelaxationScenario& sc);

// nu = 1 closed form: sigma0 (eta0 + theta t)^(-E/theta).
double stress_relaxation_nu1(double t, const RelaxationScenario& sc);

// Leading large-time term: sigma0 ((E/theta)^nu ln^nu(eta0+theta t))^(-1) / Gamma(1-nu).
// Needs nu < 1 and t > t_start.
double asymptotic_stress(double t, double nu, const RelaxationScenario& sc);

// Constant-viscosity fractional Maxwell relaxation E_nu(-t^nu).
double classical_fractional_maxwell(double t, double nu);

enum class GridKind { Linear, Logarithmic };

struct GridSpec {
  GridKind kind = GridKind::Linear;
  double t_min = 0.0;
  double t_max = 1.0;
  std::size_t n_points = 2;
};

// Throws GridError.
void validate(const GridSpec& g);

// Grid nodes; the endpoints are exactly t_min and t_max.
std::vector<double> grid_nodes(const GridSpec& g);

enum class ModelKind { Modified, ModifiedNu1, Asymptotic, ClassicalFractional };

std::string_view to_string(ModelKind kind);

struct ModelSpec {
  ModelKind kind = ModelKind::Modified;
  double nu = 0.5;
  RelaxationScenario scenario{};
};

double evaluate_model(const ModelSpec& model, double t);

struct SampledCurve {
  std::vector<double> times;
  std::vector<double> values;
  ModelSpec model;
  GridSpec grid;
};

// One model value per grid node; fails on the first node the model rejects.
SampledCurve sample_curve(const ModelSpec& model, const GridSpec& g);

}  // namespace fmaxwell
