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

#include "talenti/radial_poisson.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <string>
#include <utility>

namespace talenti::poisson {

using numerics::Grid;
using numerics::RealFunction;
using numerics::Tolerance;

namespace {

const Tolerance kCellTol{1e-12, 1e-300, 50};

void validate(const RadialProblem& problem) {
  if (!(problem.p > 1.0) || !std::isfinite(problem.p)) {
    throw Error(ErrorKind::kInvalidParameter, "p must be > 1");
  }
  if (!(problem.r1 > 0.0) || !(problem.r1 < problem.space.length())) {
    throw Error(ErrorKind::kInvalidParameter, "r1 must lie in (0, L)");
  }
  if (!problem.f.value) {
    throw Error(ErrorKind::kInvalidParameter, "data function is empty");
  }
}

Grid build_grid(const RadialProblem& problem, std::size_t nodes,
                std::span<const double> extra = {}) {
  if (nodes < 3) {
    throw Error(ErrorKind::kInvalidParameter, "solver grid needs >= 3 nodes");
  }
  std::vector<double> cuts;
  for (const double b : problem.f.breakpoints) {
    if (b > 0.0 && b < problem.r1) cuts.push_back(b);
  }
  for (const double b : extra) {
    if (b > 0.0 && b < problem.r1) cuts.push_back(b);
  }
  return Grid::cosine(problem.r1, nodes).with_breakpoints(cuts);
}

void check_sign(const RadialProblem& problem, const Grid& grid) {
  const auto x = grid.nodes();
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double at_node = problem.f(x[i]);
    const double at_mid = i + 1 < x.size() ? problem.f(0.5 * (x[i] + x[i + 1])) : 0.0;
    if (at_node < 0.0 || at_mid < 0.0) {
      throw Error(ErrorKind::kNegativeData, "f < 0 near r = " + std::to_string(x[i]));
    }
  }
}

double checked_integral(const RealFunction& g, double a, double b, double abs = 1e-300,
                        double rel = kCellTol.rel) {
  try {
    return numerics::integrate(g, a, b, Tolerance{rel, abs, kCellTol.max_subdivisions});
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kDivergence) {
      throw Error(ErrorKind::kIntegrabilityFailure, e.what());
    }
    throw;
  }
}

// Absolute quadrature floor for the cells of a load table: 1e-15 of the
// total load. Near zeros of f the integrand is rounding noise that a
// relative target alone cannot resolve.
double load_floor(const RealFunction& g, double r1) {
  return std::max(1e-15 * std::abs(checked_integral(g, 0.0, r1, 1e-300, 1e-6)), 1e-300);
}

// Shared state of a closed-form solution. Evaluators capture it by
// shared_ptr so solutions stay cheap to copy.
struct ExplicitKernel {
  explicit ExplicitKernel(WeightedInterval s) : space(std::move(s)) {}

  WeightedInterval space;
  DataFunction f;
  RealFunction load_override;
  double power = 1.0;  // 1/(p-1)
  std::vector<double> x;
  std::vector<double> load;
  std::vector<double> w;
  double load_abs = 1e-300;

  std::size_t cell(double r) const {
    auto it = std::upper_bound(x.begin(), x.end(), r);
    std::size_t j = it == x.begin() ? 0 : static_cast<std::size_t>(it - x.begin()) - 1;
    return std::min(j, x.size() - 2);
  }

  double load_at(double r) const {
    if (load_override) return load_override(r);
    const std::size_t j = cell(r);
    if (r == x[j]) return load[j];
    return load[j] + checked_integral(
                         [this](double t) { return f(t) * space.density(t); }, x[j], r,
                         load_abs);
  }

  double flux_ratio(double r) const {
    const double m = load_at(r);
    if (m <= 0.0) return 0.0;
    return std::pow(m / space.density(r), power);
  }

  double slope_at(double r) const { return -flux_ratio(r); }

  double value_at(double r) const {
    if (r >= x.back()) return 0.0;
    const std::size_t j = cell(r);
    if (r == x[j]) return w[j];
    return w[j + 1] + checked_integral([this](double t) { return flux_ratio(t); }, r,
                                       x[j + 1]);
  }
};

struct MassKernel {
  explicit MassKernel(WeightedInterval s) : space(std::move(s)) {}

  WeightedInterval space;
  RealFunction primitive;
  double power = 1.0;
  std::vector<double> x;
  std::vector<double> sigma;
  std::vector<double> w;

  double integrand(double s) const {
    const double F = primitive(s);
    if (F <= 0.0) return 0.0;
    const double J = space.profile(s);
    return std::pow(F / J, power) / J;
  }

  double slope_at(double r) const {
    const double F = primitive(space.cumulative(r));
    if (F <= 0.0) return 0.0;
    return -std::pow(F / space.density(r), power);
  }

  double value_at(double r) const {
    if (r >= x.back()) return 0.0;
    auto it = std::upper_bound(x.begin(), x.end(), r);
    std::size_t j = static_cast<std::size_t>(it - x.begin()) - 1;
    j = std::min(j, x.size() - 2);
    if (r == x[j]) return w[j];
    return w[j + 1] + checked_integral([this](double s) { return integrand(s); },
                                       space.cumulative(r), sigma[j + 1]);
  }
};

RadialSolution solve_mass_impl(const RadialProblem& problem,
                               const RealFunction& primitive,
                               std::span<const double> cuts, std::size_t nodes) {
  validate(problem);
  const Grid grid = build_grid(problem, nodes, cuts);
  auto k = std::make_shared<MassKernel>(problem.space);
  k->primitive = primitive;
  k->power = 1.0 / (problem.p - 1.0);
  k->x.assign(grid.nodes().begin(), grid.nodes().end());
  const std::size_t n = k->x.size();
  k->sigma.resize(n);
  for (std::size_t i = 0; i < n; ++i) k->sigma[i] = problem.space.cumulative(k->x[i]);
  std::vector<double> slopes(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) slopes[i] = k->slope_at(k->x[i]);
  k->w.assign(n, 0.0);
  for (std::size_t i = n - 1; i-- > 0;) {
    const MassKernel& ref = *k;
    k->w[i] = k->w[i + 1] + checked_integral(
                                [&ref](double s) { return ref.integrand(s); },
                                k->sigma[i], k->sigma[i + 1]);
  }
  std::vector<double> values = k->w;
  return RadialSolution(
      grid, std::move(values), std::move(slopes), problem.p, problem.space,
      [k](double r) { return k->value_at(r); },
      [k](double r) { return k->slope_at(r); });
}

}  // namespace

DataFunction DataFunction::constant(double c) {
  DataFunction f;
  f.value = [c](double) { return c; };
  f.nonincreasing = true;
  f.piecewise_constant = true;
  f.label = "const " + std::to_string(c);
  return f;
}

DataFunction DataFunction::cospos() {
  DataFunction f;
  f.value = [](double t) { return std::max(std::cos(t), 0.0); };
  f.breakpoints = {0.5 * std::numbers::pi};
  f.nonincreasing = true;
  f.label = "cospos";
  return f;
}

DataFunction DataFunction::two_level(double h1, double h2, double split) {
  if (!(split > 0.0)) {
    throw Error(ErrorKind::kInvalidParameter, "two-level split must be > 0");
  }
  DataFunction f;
  f.value = [h1, h2, split](double t) { return t < split ? h1 : h2; };
  f.breakpoints = {split};
  f.nonincreasing = h1 >= h2;
  f.piecewise_constant = true;
  f.label = "twolevel " + std::to_string(h1) + " " + std::to_string(h2) + " " +
            std::to_string(split);
  return f;
}

RadialSolution::RadialSolution(Grid grid, std::vector<double> values,
                               std::vector<double> slopes, double p,
                               WeightedInterval space, RealFunction exact_value,
                               RealFunction exact_slope)
    : grid_(std::move(grid)),
      values_(std::move(values)),
      slopes_(std::move(slopes)),
      p_(p),
      space_(std::move(space)),
      exact_value_(std::move(exact_value)),
      exact_slope_(std::move(exact_slope)),
      interpolant_(std::vector<double>(grid_.nodes().begin(), grid_.nodes().end()),
                   values_, slopes_) {
  if (values_.size() != grid_.size() || slopes_.size() != grid_.size()) {
    throw Error(ErrorKind::kInvalidParameter,
                "solution values must match the grid");
  }
}

double RadialSolution::value(double rho) const {
  if (rho < 0.0) {
    throw Error(ErrorKind::kOutOfDomain, "radial solution needs rho >= 0");
  }
  if (rho >= radius()) return 0.0;
  const std::size_t j = grid_.locate(rho);
  if (rho == grid_[j]) return values_[j];
  return exact_value_ ? exact_value_(rho) : interpolant_(rho);
}

double RadialSolution::derivative(double rho) const {
  if (rho < 0.0 || rho > radius()) {
    throw Error(ErrorKind::kOutOfDomain, "radial solution derivative off [0, r1]");
  }
  const std::size_t j = grid_.locate(rho);
  if (rho == grid_[j]) return slopes_[j];
  if (j + 1 < grid_.size() && rho == grid_[j + 1]) return slopes_[j + 1];
  return exact_slope_ ? exact_slope_(rho) : interpolant_.derivative(rho);
}

double RadialSolution::sup() const {
  double s = 0.0;
  for (const double v : values_) s = std::max(s, std::abs(v));
  return s;
}

RadialSolution solve_explicit(const RadialProblem& problem, std::size_t nodes) {
  validate(problem);
  const Grid grid = build_grid(problem, nodes);
  check_sign(problem, grid);
  auto k = std::make_shared<ExplicitKernel>(problem.space);
  k->f = problem.f;
  k->load_override = problem.load;
  k->power = 1.0 / (problem.p - 1.0);
  k->x.assign(grid.nodes().begin(), grid.nodes().end());
  const std::size_t n = k->x.size();

  k->load.assign(n, 0.0);
  if (!problem.load) {
    k->load_abs = load_floor(
        [&problem](double t) { return problem.f(t) * problem.space.density(t); }, problem.r1);
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (problem.load) {
      k->load[i + 1] = problem.load(k->x[i + 1]);
    } else {
      const ExplicitKernel& ref = *k;
      k->load[i + 1] =
          k->load[i] + checked_integral(
                           [&ref](double t) { return ref.f(t) * ref.space.density(t); },
                           k->x[i], k->x[i + 1], k->load_abs);
    }
  }
  if (!std::isfinite(k->load.back())) {
    throw Error(ErrorKind::kIntegrabilityFailure, "load integral is not finite");
  }

  std::vector<double> slopes(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    slopes[i] = k->load[i] > 0.0
                    ? -std::pow(k->load[i] / problem.space.density(k->x[i]), k->power)
                    : 0.0;
  }
  k->w.assign(n, 0.0);
  for (std::size_t i = n - 1; i-- > 0;) {
    const ExplicitKernel& ref = *k;
    k->w[i] = k->w[i + 1] + checked_integral(
                                [&ref](double t) { return ref.flux_ratio(t); }, k->x[i],
                                k->x[i + 1]);
  }
  std::vector<double> values = k->w;
  return RadialSolution(
      grid, std::move(values), std::move(slopes), problem.p, problem.space,
      [k](double r) { return k->value_at(r); },
      [k](double r) { return k->slope_at(r); });
}

RadialSolution solve_mass_form(const RadialProblem& problem,
                               const numerics::RealFunction& primitive,
                               std::size_t nodes) {
  return solve_mass_impl(problem, primitive, {}, nodes);
}

RadialSolution solve_mass_form(const RadialProblem& problem,
                               const numerics::StepFunction& fsharp,
                               std::size_t nodes) {
  for (const double v : fsharp.values()) {
    if (v < 0.0) throw Error(ErrorKind::kNegativeData, "f^sharp < 0");
  }
  if (!fsharp.is_nonincreasing()) {
    throw Error(ErrorKind::kInvalidParameter, "f^sharp must be nonincreasing");
  }
  // Align the physical grid with the jumps of f^sharp o W.
  validate(problem);
  std::vector<double> cuts;
  const double top = problem.space.cumulative(problem.r1);
  for (const double s : fsharp.breaks()) {
    if (s > 0.0 && s < top) cuts.push_back(problem.space.inverse_cumulative(s));
  }
  return solve_mass_impl(
      problem, [fsharp](double s) { return fsharp.integral_to(s); }, cuts, nodes);
}

double weak_residual(const RadialSolution& solution, const RadialProblem& problem,
                     std::size_t hats) {
  validate(problem);
  if (hats == 0) {
    throw Error(ErrorKind::kInvalidParameter, "weak residual needs test functions");
  }
  const double r1 = problem.r1;
  const double p = problem.p;
  const WeightedInterval& space = problem.space;
  std::vector<double> centres(hats + 2);
  for (std::size_t k = 0; k < centres.size(); ++k) {
    centres[k] = 0.5 * r1 *
                 (1.0 - std::cos(std::numbers::pi * static_cast<double>(k) /
                                 static_cast<double>(hats + 1)));
  }
  centres.front() = 0.0;
  centres.back() = r1;
  const Tolerance tol{1e-11, 1e-300, 50};
  // Integrate over [a, b] split at the data breakpoints and at the solution
  // nodes, where an interpolated derivative has kinks.
  const auto nodes = solution.grid().nodes();
  auto piecewise = [&](const RealFunction& g, double a, double b) {
    std::vector<double> cuts{a};
    for (const double x : problem.f.breakpoints) {
      if (x > a && x < b) cuts.push_back(x);
    }
    for (auto it = std::upper_bound(nodes.begin(), nodes.end(), a);
         it != nodes.end() && *it < b; ++it) {
      cuts.push_back(*it);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.push_back(b);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      total += numerics::integrate(g, cuts[i], cuts[i + 1], tol);
    }
    return total;
  };
  auto flux = [&](double t) {
    const double d = solution.derivative(t);
    return std::copysign(std::pow(std::abs(d), p - 1.0), d) * space.density(t);
  };
  double worst = 0.0;
  for (std::size_t k = 1; k <= hats; ++k) {
    const double a = centres[k - 1];
    const double c = centres[k];
    const double b = centres[k + 1];
    const double up = 1.0 / (c - a);
    const double down = 1.0 / (b - c);
    auto phi = [&](double t) { return t <= c ? (t - a) * up : (b - t) * down; };
    const double energy = up * piecewise(flux, a, c) - down * piecewise(flux, c, b);
    auto source = [&](double t) { return problem.f(t) * phi(t) * space.density(t); };
    const double load = piecewise(source, a, c) + piecewise(source, c, b);
    auto phi_p = [&](double t) { return std::pow(phi(t), p) * space.density(t); };
    const double norm_p = piecewise(phi_p, a, c) + piecewise(phi_p, c, b) +
                          std::pow(up, p) * (space.cumulative(c) - space.cumulative(a)) +
                          std::pow(down, p) * (space.cumulative(b) - space.cumulative(c));
    worst = std::max(worst, std::abs(energy - load) / std::pow(norm_p, 1.0 / p));
  }
  return worst;
}

double gradient_norm(const RadialSolution& solution, double r) {
  if (!(r >= 1.0) || r > solution.p() * (1.0 + 1e-12)) {
    throw Error(ErrorKind::kInvalidParameter, "gradient norm needs 1 <= r <= p");
  }
  const auto x = solution.grid().nodes();
  const WeightedInterval& space = solution.space();
  auto g = [&](double t) {
    return std::pow(std::abs(solution.derivative(t)), r) * space.density(t);
  };
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    total += numerics::integrate(g, x[i], x[i + 1], kCellTol);
  }
  return total;
}

double gradient_norm_mass(const WeightedInterval& space, double p, double r,
                          double v, const numerics::RealFunction& primitive) {
  if (!(p > 1.0) || !(r >= 1.0) || r > p * (1.0 + 1e-12)) {
    throw Error(ErrorKind::kInvalidParameter, "gradient norm needs 1 <= r <= p");
  }
  if (!(v > 0.0) || v > space.total_mass()) {
    throw Error(ErrorKind::kInvalidMass, "mass outside (0, total]");
  }
  const double power = r / (p - 1.0);
  auto g = [&](double s) {
    const double F = primitive(s);
    return F <= 0.0 ? 0.0 : std::pow(F / space.profile(s), power);
  };
  return numerics::integrate(g, 0.0, v, Tolerance{1e-11, 1e-300, 60});
}

numerics::RealFunction load_in_mass(const WeightedInterval& space, const DataFunction& f,
                                    double v) {
  if (!(v > 0.0) || v > space.total_mass()) {
    throw Error(ErrorKind::kInvalidMass, "mass outside (0, total]");
  }
  const double r1 = space.inverse_cumulative(v);
  const Grid grid = Grid::cosine(r1, 513).with_breakpoints(f.breakpoints);
  const auto x = grid.nodes();
  std::vector<double> cum(x.size(), 0.0);
  auto g = [space, f](double t) { return f(t) * space.density(t); };
  const double abs = load_floor(g, r1);
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    cum[i + 1] = cum[i] + checked_integral(g, x[i], x[i + 1], abs);
  }
  return [space, g, grid, cum = std::move(cum), v, abs](double s) {
    if (s <= 0.0) return 0.0;
    const double rho = space.inverse_cumulative(std::min(s, v));
    const std::size_t i = grid.locate(rho);
    return cum[i] + checked_integral(g, grid[i], rho, abs);
  };
}

}  // namespace talenti::poisson
