// Copyright 2026 The talenti-kit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "talenti/talenti_check.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <string>

#include "talenti/rearrangement.hpp"

namespace talenti::comparison {

using numerics::Grid;
using numerics::RealFunction;
using numerics::StepFunction;
using numerics::Tolerance;
using poisson::DataFunction;
using poisson::RadialProblem;
using poisson::RadialSolution;

namespace {

constexpr double kCdThreshold = 1e-8;
constexpr std::size_t kLevels = 256;

// r -> int_0^r f dm on the instance, tabulated and refined locally.
class LoadTable {
 public:
  LoadTable(const WeightedInterval& space, const DataFunction& f, double r1)
      : space_(space), f_(f) {
    // Absolute floor from the total load: near a zero of f the integrand is
    // rounding noise that no relative target can resolve.
    abs_ = 1e-15 * std::abs(numerics::integrate(
                       [this](double t) { return f_(t) * space_.density(t); }, 0.0, r1,
                       Tolerance{1e-6, 1e-300, 50}));
    abs_ = std::max(abs_, 1e-300);
    std::vector<double> cuts;
    for (const double b : f.breakpoints) {
      if (b > 0.0 && b < r1) cuts.push_back(b);
    }
    const Grid grid = Grid::cosine(r1, 1025).with_breakpoints(cuts);
    x_.assign(grid.nodes().begin(), grid.nodes().end());
    load_.assign(x_.size(), 0.0);
    for (std::size_t i = 0; i + 1 < x_.size(); ++i) {
      load_[i + 1] = load_[i] + piece(x_[i], x_[i + 1]);
    }
  }

  double operator()(double r) const {
    if (r <= 0.0) return 0.0;
    r = std::min(r, x_.back());
    auto it = std::upper_bound(x_.begin(), x_.end(), r);
    const auto j = std::min(static_cast<std::size_t>(it - x_.begin()) - 1,
                            x_.size() - 2);
    return r == x_[j] ? load_[j] : load_[j] + piece(x_[j], r);
  }

 private:
  double piece(double a, double b) const {
    return numerics::integrate(
        [this](double t) { return f_(t) * space_.density(t); }, a, b,
        Tolerance{1e-13, abs_, 50});
  }

  WeightedInterval space_;
  DataFunction f_;
  std::vector<double> x_;
  std::vector<double> load_;
  double abs_ = 1e-300;
};

RearrangedData from_step(StepFunction step) {
  auto shared = std::make_shared<const StepFunction>(std::move(step));
  RearrangedData data;
  const double end = shared->domain_end();
  data.sharp = [shared, end](double s) { return s > end ? 0.0 : (*shared)(s); };
  data.primitive = [shared, end](double s) {
    return shared->integral_to(std::min(s, end));
  };
  data.mass_breaks.assign(shared->breaks().begin(), shared->breaks().end());
  return data;
}

RearrangedData sampled_rearrangement(const ProblemInstance& instance,
                                     std::size_t cells) {
  const auto grid = Grid::uniform(instance.r1(), cells + 1);
  const auto sampled =
      SampledFunction::from_grid(instance.space, grid, instance.f.value);
  return from_step(rearrangement::decreasing_rearrangement(sampled));
}

double five_point(const RealFunction& g, double t, double h, int side) {
  if (side == 0) {
    return (g(t - 2 * h) - 8 * g(t - h) + 8 * g(t + h) - g(t + 2 * h)) / (12 * h);
  }
  const double s = side > 0 ? h : -h;
  return (-25 * g(t) + 48 * g(t + s) - 36 * g(t + 2 * s) + 16 * g(t + 3 * s) -
          3 * g(t + 4 * s)) /
         (12 * s);
}

std::vector<double> default_levels(double top) {
  std::vector<double> levels(kLevels);
  for (std::size_t k = 0; k < kLevels; ++k) {
    levels[k] = top * static_cast<double>(k + 1) / static_cast<double>(kLevels + 1);
  }
  return levels;
}

}  // namespace

WeightedInterval make_shifted_cap(double K, double N, double a) {
  const ModelSpace model(K, N);
  const double L = model.length();
  if (!(a >= 0.0) || !(a < 0.5 * L)) {
    throw Error(ErrorKind::kInvalidShift,
                "shift a = " + std::to_string(a) + " outside [0, L/2)");
  }
  if (a == 0.0) return model.as_weighted_interval();
  const double kappa = std::sqrt(K / (N - 1.0));
  const double length = L - a;
  // sin(kappa (t + a)) = sin(kappa (length - t)); the second form avoids
  // cancellation near the far endpoint, where the density vanishes.
  auto raw = [kappa, a, N, length](double t) {
    if (t >= length) return 0.0;
    const double arg = t + a <= 0.5 * (length + a) ? t + a : length - t;
    return std::pow(std::max(std::sin(kappa * arg), 0.0), N - 1.0);
  };
  WeightedInterval::Options options;
  options.label = "shifted-cap a=" + std::to_string(a);
  return WeightedInterval(length, raw, CdTag{K, N}, options);
}

ProblemInstance make_instance(WeightedInterval space, double v, double p,
                              DataFunction f, std::string provenance) {
  const auto& tag = space.cd_tag();
  if (!tag) {
    throw Error(ErrorKind::kInvalidParameter, "instance space carries no CD tag");
  }
  const double defect = space.cd_defect(*tag);
  if (defect > kCdThreshold) {
    throw Error(ErrorKind::kInvalidParameter,
                "instance density fails the CD check, defect " +
                    std::to_string(defect));
  }
  if (!(v > 0.0 && v < 1.0)) {
    throw Error(ErrorKind::kInvalidMass, "v must lie in (0, 1)");
  }
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw Error(ErrorKind::kInvalidParameter, "p must be > 1");
  }
  ModelSpace model(tag->K, tag->N);
  return ProblemInstance{std::move(space), std::move(model), v, p, std::move(f),
                         std::move(provenance)};
}

RearrangedData rearrange_data(const ProblemInstance& instance, std::size_t cells) {
  const double r1 = instance.r1();
  const double v = instance.v;
  const WeightedInterval& space = instance.space;
  const DataFunction& f = instance.f;

  if (f.nonincreasing) {
    // Monotone data: f^sharp = f o W^{-1} and F = load o W^{-1}.
    auto load = std::make_shared<const LoadTable>(space, f, r1);
    RearrangedData data;
    data.sharp = [space, f, v](double s) {
      return s > v ? 0.0 : f(space.inverse_cumulative(s));
    };
    data.primitive = [space, load, v](double s) {
      return (*load)(space.inverse_cumulative(std::min(s, v)));
    };
    for (const double b : f.breakpoints) {
      if (b > 0.0 && b < r1) data.mass_breaks.push_back(space.cumulative(b));
    }
    return data;
  }

  if (f.piecewise_constant) {
    std::vector<double> cuts{0.0};
    for (const double b : f.breakpoints) {
      if (b > 0.0 && b < r1) cuts.push_back(b);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.push_back(r1);
    std::vector<Cell> pieces;
    for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
      const double mass = (j + 2 == cuts.size() ? v : space.cumulative(cuts[j + 1])) -
                          space.cumulative(cuts[j]);
      pieces.push_back({mass, f(0.5 * (cuts[j] + cuts[j + 1]))});
    }
    for (const Cell& c : pieces) {
      if (c.value < 0.0) throw Error(ErrorKind::kNegativeData, "f < 0");
    }
    return from_step(rearrangement::decreasing_rearrangement(
        SampledFunction(std::move(pieces))));
  }

  // General data: cell averages, with the resolution effect measured on
  // the model solution.
  RearrangedData fine = sampled_rearrangement(instance, cells);
  const RearrangedData coarse = sampled_rearrangement(instance, cells / 2);
  const auto w_fine = poisson::solve_explicit(model_problem(instance, fine), 1024);
  const auto w_coarse =
      poisson::solve_explicit(model_problem(instance, coarse), 1024);
  const auto nodes = w_fine.grid().nodes();
  for (const double x : nodes) {
    fine.grid_bound =
        std::max(fine.grid_bound, std::abs(w_fine.value(x) - w_coarse.value(x)));
  }
  return fine;
}

RadialProblem model_problem(const ProblemInstance& instance,
                            const RearrangedData& data) {
  const ModelSpace& model = instance.model;
  const double rv = model.inverse_cumulative(instance.v);
  DataFunction fstar;
  fstar.value = [model, sharp = data.sharp](double x) {
    return sharp(model.cumulative(x));
  };
  for (const double s : data.mass_breaks) {
    if (s > 0.0 && s < instance.v) {
      fstar.breakpoints.push_back(model.inverse_cumulative(s));
    }
  }
  fstar.nonincreasing = true;
  fstar.label = instance.f.label + " rearranged";
  RadialProblem problem{model.as_weighted_interval(), instance.p, std::move(fstar),
                        rv, {}};
  problem.load = [model, primitive = data.primitive](double r) {
    return primitive(model.cumulative(r));
  };
  return problem;
}

double level_radius(const RadialSolution& u, double t) {
  const auto values = u.values();
  const auto x = u.grid().nodes();
  if (t <= 0.0) return u.radius();
  if (t >= values.front()) return 0.0;
  // First node with u <= t; values are nonincreasing.
  const auto it = std::partition_point(values.begin(), values.end(),
                                       [t](double value) { return value > t; });
  const auto k = static_cast<std::size_t>(it - values.begin());
  if (values[k] == t && (k == 0 || values[k - 1] > t)) return x[k];
  return numerics::find_root([&](double r) { return u.value(r) - t; }, x[k - 1],
                             x[k], Tolerance::tight());
}

double levy_gromov_radial(const ProblemInstance& instance, const RadialSolution& u,
                          std::span<const double> levels) {
  const double top = u.sup();
  std::vector<double> fallback;
  if (levels.empty()) {
    fallback = default_levels(top);
    levels = fallback;
  }
  double worst = numerics::kInf;
  for (const double t : levels) {
    if (!(t > 0.0 && t < top)) continue;
    const double rho = level_radius(u, t);
    const double mass = instance.space.cumulative(rho);
    const double ratio =
        instance.space.density(rho) / instance.model.isoperimetric_profile(mass);
    worst = std::min(worst, ratio);
  }
  return worst;
}

std::vector<ChainRow> chain_inequality_trace(const ProblemInstance& instance,
                                             const RadialSolution& u,
                                             const RearrangedData& data) {
  const double top = u.sup();
  const double p = instance.p;
  const double spacing = top / static_cast<double>(kLevels + 1);
  const double h = 1e-2 * spacing;
  std::vector<double> kinks;
  for (const double b : instance.f.breakpoints) {
    if (b > 0.0 && b < u.radius()) kinks.push_back(u.value(b));
  }
  auto mu = [&](double t) { return instance.space.cumulative(level_radius(u, t)); };
  std::vector<ChainRow> rows;
  for (const double t : default_levels(top)) {
    if (t > 0.99 * top) break;
    int side = 0;
    for (const double kink : kinks) {
      if (std::abs(t - kink) < 4.0 * h) side = t >= kink ? 1 : -1;
    }
    ChainRow row;
    row.level = t;
    row.mu = mu(t);
    row.dmu = five_point(mu, t, h, side);
    const double profile = instance.model.isoperimetric_profile(row.mu);
    row.value = -row.dmu * std::pow(profile, -p / (p - 1.0)) *
                std::pow(data.primitive(row.mu), 1.0 / (p - 1.0));
    rows.push_back(row);
  }
  return rows;
}

ComparisonReport run_comparison(const ProblemInstance& instance,
                                std::span<const double> r_list, std::size_t nodes) {
  for (const double r : r_list) {
    if (!(r >= 1.0) || r > instance.p) {
      throw Error(ErrorKind::kInvalidParameter, "gradient exponents must lie in [1, p]");
    }
  }
  const double r1 = instance.r1();
  const RadialProblem problem{instance.space, instance.p, instance.f, r1, {}};
  const RadialSolution u = poisson::solve_explicit(problem, nodes);
  const RearrangedData data = rearrange_data(instance);
  const RadialSolution w = poisson::solve_explicit(model_problem(instance, data), nodes);

  ComparisonReport report;
  report.grid_bound = data.grid_bound;
  double worst = -numerics::kInf;
  for (const double x : w.grid().nodes()) {
    const double s = std::min(instance.model.cumulative(x), instance.v);
    const double ustar = u.value(instance.space.inverse_cumulative(s));
    const double diff = ustar - w.value(x);
    worst = std::max(worst, diff);
    report.sharpness_gap = std::max(report.sharpness_gap, std::abs(diff));
  }
  report.pointwise_violation = std::max(worst, 0.0);
  report.sup_margin = w.values().front() - u.values().front();
  for (const double r : r_list) {
    report.gradient_gaps[r] = {poisson::gradient_norm(u, r),
                               poisson::gradient_norm(w, r)};
  }
  report.levy_gromov_min_ratio = levy_gromov_radial(instance, u);
  const auto rows = chain_inequality_trace(instance, u, data);
  report.chain_min = numerics::kInf;
  report.chain_max = -numerics::kInf;
  for (const ChainRow& row : rows) {
    report.chain_min = std::min(report.chain_min, row.value);
    report.chain_max = std::max(report.chain_max, row.value);
  }
  return report;
}

}  // namespace talenti::comparison
