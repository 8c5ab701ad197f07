#include "fmaxwell/fitting.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "fmaxwell/errors.hpp"
#include "fmaxwell/mittag_leffler.hpp"
#include "fmaxwell/models.hpp"

namespace fmaxwell {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  if (line.find(',') != std::string_view::npos) {
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      fields.push_back(trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return fields;
  }
  std::size_t pos = 0;
  while (pos < line.size()) {
    pos = line.find_first_not_of(" \t\r", pos);
    if (pos == std::string_view::npos) break;
    const auto end = line.find_first_of(" \t\r", pos);
    fields.push_back(line.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos));
    pos = end;
  }
  return fields;
}

std::optional<double> parse_number(std::string_view field) {
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) return std::nullopt;
  return value;
}

bool looks_like_header(std::string_view line) {
  return std::any_of(line.begin(), line.end(), [](char c) {
    return std::isalpha(static_cast<unsigned char>(c)) && c != 'e' && c != 'E';
  });
}

using Point = std::vector<double>;

// Box-constrained Nelder-Mead over the free parameters.
class BoundedSimplex {
 public:
  BoundedSimplex(const Dataset& d, const FitConfig& c) : data_(d), cfg_(c) {
    for (Param p : cfg_.free_params) box_.push_back(cfg_.bounds_for(p));
    double sum_sq = 0.0;
    for (double s : data_.sigma) sum_sq += s * s;
    floor_ = 1e-16 * sum_sq;
  }

  FitResult run() {
    const std::size_t dim = cfg_.free_params.size();
    Point x0(dim);
    for (std::size_t i = 0; i < dim; ++i) x0[i] = cfg_.initial[cfg_.free_params[i]];

    FitResult result;
    result.free_params = cfg_.free_params;
    // Projection onto the box can flatten the simplex against a face, so a
    // converged run is restarted from its best vertex until a restart stops
    // improving on it.
    build_simplex(x0);
    double settled = std::numeric_limits<double>::infinity();
    int calm_steps = 0;
    while (result.iterations < cfg_.max_iters) {
      step();
      ++result.iterations;
      order();
      result.history.push_back(rms(scores_.front()));

      const double spread = scores_.back() - scores_.front();
      const bool flat = spread <= cfg_.tol * std::max(scores_.front(), floor_);
      calm_steps = flat ? calm_steps + 1 : 0;
      if (calm_steps < 3 && !collapsed()) continue;

      const double best = scores_.front();
      if (!std::isfinite(best)) break;
      if (settled - best <= cfg_.tol * std::max(best, floor_)) {
        result.converged = true;
        break;
      }
      settled = best;
      calm_steps = 0;
      build_simplex(Point(vertices_.front()));
    }

    result.estimates = cfg_.initial;
    for (std::size_t i = 0; i < dim; ++i) result.estimates[cfg_.free_params[i]] = vertices_.front()[i];
    result.residual = rms(scores_.front());
    return result;
  }

 private:
  double rms(double sse) const { return std::sqrt(sse / static_cast<double>(data_.size())); }

  void build_simplex(Point x0) {
    vertices_.assign(1, x0);
    for (std::size_t i = 0; i < x0.size(); ++i) {
      const double width = box_[i].upper - box_[i].lower;
      double step = x0[i] != 0.0 ? 0.1 * std::fabs(x0[i]) : 0.1 * width;
      step = std::min(step, 0.25 * width);
      Point v = x0;
      v[i] = x0[i] + step <= box_[i].upper ? x0[i] + step : x0[i] - step;
      vertices_.push_back(project(v));
    }
    scores_.clear();
    for (const Point& v : vertices_) scores_.push_back(objective(v));
    order();
  }

  Point project(Point x) const {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], box_[i].lower, box_[i].upper);
    return x;
  }

  double objective(const Point& x) const {
    ParameterSet params = cfg_.initial;
    for (std::size_t i = 0; i < x.size(); ++i) params[cfg_.free_params[i]] = x[i];
    double sse = 0.0;
    try {
      for (std::size_t k = 0; k < data_.size(); ++k) {
        const double r = model_stress(params, data_.t[k]) - data_.sigma[k];
        sse += r * r;
      }
    } catch (const InputError&) {
      return std::numeric_limits<double>::infinity();
    } catch (const NumericalError&) {
      return std::numeric_limits<double>::infinity();
    }
    return std::isfinite(sse) ? sse : std::numeric_limits<double>::infinity();
  }

  // Stable sort keeps tie order deterministic.
  void order() {
    std::vector<std::size_t> idx(vertices_.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return scores_[a] < scores_[b]; });
    std::vector<Point> v;
    std::vector<double> s;
    for (std::size_t i : idx) {
      v.push_back(vertices_[i]);
      s.push_back(scores_[i]);
    }
    vertices_ = std::move(v);
    scores_ = std::move(s);
  }

  bool collapsed() const {
    for (std::size_t j = 1; j < vertices_.size(); ++j) {
      for (std::size_t i = 0; i < box_.size(); ++i) {
        const double width = box_[i].upper - box_[i].lower;
        if (std::fabs(vertices_[j][i] - vertices_[0][i]) > 1e-14 * width) return false;
      }
    }
    return true;
  }

  Point along(const Point& from, const Point& to, double t) const {
    Point p(from.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = from[i] + t * (to[i] - from[i]);
    return project(p);
  }

  void step() {
    const std::size_t n = vertices_.size() - 1;
    Point centroid(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) centroid[i] += vertices_[j][i] / static_cast<double>(n);
    }
    const Point& worst = vertices_.back();
    const Point reflected = along(centroid, worst, -1.0);
    const double f_reflected = objective(reflected);

    if (f_reflected < scores_.front()) {
      const Point expanded = along(centroid, worst, -2.0);
      const double f_expanded = objective(expanded);
      if (f_expanded < f_reflected) {
        replace_worst(expanded, f_expanded);
      } else {
        replace_worst(reflected, f_reflected);
      }
      return;
    }
    if (f_reflected < scores_[n - 1]) {
      replace_worst(reflected, f_reflected);
      return;
    }
    if (f_reflected < scores_.back()) {
      const Point outside = along(centroid, reflected, 0.5);
      const double f_outside = objective(outside);
      if (f_outside <= f_reflected) {
        replace_worst(outside, f_outside);
        return;
      }
    } else {
      const Point inside = along(centroid, worst, 0.5);
      const double f_inside = objective(inside);
      if (f_inside < scores_.back()) {
        replace_worst(inside, f_inside);
        return;
      }
    }
    for (std::size_t j = 1; j < vertices_.size(); ++j) {
      vertices_[j] = along(vertices_.front(), vertices_[j], 0.5);
      scores_[j] = objective(vertices_[j]);
    }
  }

  void replace_worst(const Point& p, double f) {
    vertices_.back() = p;
    scores_.back() = f;
  }

  const Dataset& data_;
  const FitConfig& cfg_;
  std::vector<Bounds> box_;
  std::vector<Point> vertices_;
  std::vector<double> scores_;
  double floor_ = 0.0;
};

void check_physical(Param p, const Bounds& b) {
  const std::string name(to_string(p));
  if (!(b.lower < b.upper) || !std::isfinite(b.lower) || !std::isfinite(b.upper)) {
    throw ValidationError("bounds for " + name + " must be finite with lower < upper");
  }
  bool ok = true;
  switch (p) {
    case Param::Nu:
      ok = b.lower > 0.0 && b.upper <= 1.0;
      break;
    case Param::E:
    case Param::Theta:
    case Param::Sigma0:
      ok = b.lower > 0.0;
      break;
    case Param::Eta0:
      ok = b.lower >= 0.0;
      break;
  }
  if (!ok) throw ValidationError("bounds for " + name + " leave the physical range");
}

}  // namespace

Dataset load_dataset(std::istream& in, std::string source) {
  Dataset d;
  d.source = std::move(source);
  std::string raw;
  std::size_t line_no = 0;
  bool seen_record = false;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split_fields(line);
    const bool first = !seen_record;
    seen_record = true;

    std::optional<double> t;
    std::optional<double> sigma;
    if (fields.size() == 2) {
      t = parse_number(fields[0]);
      sigma = parse_number(fields[1]);
    }
    if (!t || !sigma) {
      if (first && looks_like_header(line)) continue;
      throw ParseError(line_no, "expected two numeric columns (t, sigma), got '" + std::string(line) + "'");
    }
    if (!std::isfinite(*t) || !std::isfinite(*sigma)) throw ParseError(line_no, "non-finite value");
    if (!(*sigma > 0.0)) throw ValidationError(line_no, "stress must be positive");
    if (!d.t.empty() && *t < d.t.back()) throw ValidationError(line_no, "time values must be non-decreasing");
    d.t.push_back(*t);
    d.sigma.push_back(*sigma);
  }
  return d;
}

Dataset load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open dataset '" + path.string() + "'");
  return load_dataset(in, path.string());
}

std::string_view to_string(Param p) {
  switch (p) {
    case Param::Nu:
      return "nu";
    case Param::E:
      return "E";
    case Param::Theta:
      return "theta";
    case Param::Eta0:
      return "eta0";
    case Param::Sigma0:
      return "sigma0";
  }
  return "unknown";
}

std::optional<Param> param_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kParamCount; ++i) {
    const auto p = static_cast<Param>(i);
    if (to_string(p) == name) return p;
  }
  return std::nullopt;
}

Bounds default_bounds(Param p) {
  switch (p) {
    case Param::Nu:
      return {0.05, 1.0};
    case Param::E:
    case Param::Theta:
      return {1e-6, 1e6};
    case Param::Eta0:
      return {0.0, 1e6};
    case Param::Sigma0:
      return {1e-12, 1e12};
  }
  return {0.0, 0.0};
}

Bounds FitConfig::bounds_for(Param p) const {
  const auto& b = bounds[static_cast<std::size_t>(p)];
  return b ? *b : default_bounds(p);
}

double model_stress(const ParameterSet& params, double t) {
  RelaxationScenario sc;
  sc.E = params[Param::E];
  sc.theta = params[Param::Theta];
  sc.eta0 = params[Param::Eta0];
  sc.sigma0 = params[Param::Sigma0];
  return stress_relaxation(t, params[Param::Nu], sc);
}

FitResult fit_relaxation(const Dataset& d, const FitConfig& c) {
  if (d.t.size() != d.sigma.size()) throw ValidationError("dataset columns differ in length");
  if (d.size() < 5) throw ValidationError("a fit needs at least 5 samples");
  if (c.free_params.empty()) throw ValidationError("no free parameters to fit");
  if (!(c.tol > 0.0)) throw ValidationError("fit tolerance must be positive");

  std::array<bool, kParamCount> seen{};
  for (Param p : c.free_params) {
    auto& flag = seen[static_cast<std::size_t>(p)];
    if (flag) throw ValidationError("parameter " + std::string(to_string(p)) + " listed twice");
    flag = true;
  }
  if (seen[1] && seen[2] && seen[3] && !c.allow_degenerate) {
    throw ValidationError(
        "E, theta and eta0 are not jointly identifiable (they enter only through (E/theta)^nu ln^nu(eta0 + theta "
        "t)); fix one or pass the degenerate-fit override");
  }
  for (Param p : c.free_params) {
    const Bounds b = c.bounds_for(p);
    check_physical(p, b);
    const double x0 = c.initial[p];
    if (!(x0 >= b.lower && x0 <= b.upper)) {
      throw ValidationError("initial " + std::string(to_string(p)) + " lies outside its bounds");
    }
  }
  return BoundedSimplex(d, c).run();
}

}  // namespace fmaxwell
