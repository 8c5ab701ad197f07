#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fmaxwell {

// Stress-relaxation observations (t_i, sigma_i).
struct Dataset {
  std::vector<double> t;
  std::vector<double> sigma;
  std::string source;

  std::size_t size() const { return t.size(); }
};

// Two numeric columns (t, sigma) separated by a comma or whitespace; blank
// lines and '#' comments are skipped, and a non-numeric first record is taken
// as a header. Throws ParseError for malformed or non-finite rows and
// ValidationError for sigma <= 0 or decreasing t, both with the line number.
Dataset load_dataset(std::istream& in, std::string source = "<stream>");
Dataset load_dataset(const std::filesystem::path& path);

enum class Param { Nu = 0, E, Theta, Eta0, Sigma0 };
inline constexpr std::size_t kParamCount = 5;

std::string_view to_string(Param p);
std::optional<Param> param_from_string(std::string_view name);

struct ParameterSet {
  std::array<double, kParamCount> values{0.5, 1.0, 1.0, 1.0, 1.0};

  double& operator[](Param p) { return values[static_cast<std::size_t>(p)]; }
  double operator[](Param p) const { return values[static_cast<std::size_t>(p)]; }
};

struct Bounds {
  double lower;
  double upper;
};

// Default box: nu in [0.05, 1], E, theta in [1e-6, 1e6], eta0 in [0, 1e6],
// sigma0 in [1e-12, 1e12].
Bounds default_bounds(Param p);

struct FitConfig {
  std::vector<Param> free_params{Param::Nu};
  std::array<std::optional<Bounds>, kParamCount> bounds{};  // unset -> default_bounds
  ParameterSet initial{};  // also supplies the fixed parameters
  std::size_t max_iters = 500;
  double tol = 1e-10;  // relative simplex spread in the sum of squares
  // E, theta and eta0 enter the response only through (E/theta)^nu ln^nu(eta0 + theta t);
  // fitting all three needs this override.
  bool allow_degenerate = false;

  Bounds bounds_for(Param p) const;
};

struct FitResult {
  ParameterSet estimates;
  std::vector<Param> free_params;
  double residual = 0.0;  // root-mean-square misfit
  std::size_t iterations = 0;
  bool converged = false;
  std::vector<double> history;  // best RMS misfit after each iteration
};

// Model stress for a parameter set: sigma0 E_nu(-(E/theta)^nu ln^nu(eta0 + theta t)).
double model_stress(const ParameterSet& params, double t);

// Bounded Nelder-Mead on the sum of squared residuals. Points where the model
// is undefined (t before the operator start time) score +inf. Reaching
// max_iters returns the best vertex with converged = false.
FitResult fit_relaxation(const Dataset& d, const FitConfig& c);

}  // namespace fmaxwell
