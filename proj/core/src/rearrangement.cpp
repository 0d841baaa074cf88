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

#include "talenti/rearrangement.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace talenti {

using numerics::Continuity;
using numerics::StepFunction;

namespace {

// Measure-carrying levels of |u| in decreasing order, ties merged.
std::vector<Cell> sorted_levels(std::span<const Cell> cells) {
  std::vector<Cell> levels;
  levels.reserve(cells.size());
  for (const Cell& c : cells) {
    if (c.measure > 0.0) levels.push_back({c.measure, std::abs(c.value)});
  }
  std::sort(levels.begin(), levels.end(),
            [](const Cell& a, const Cell& b) { return a.value > b.value; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (out > 0 && levels[out - 1].value == levels[i].value) {
      levels[out - 1].measure += levels[i].measure;
    } else {
      levels[out++] = levels[i];
    }
  }
  levels.resize(out);
  return levels;
}

StepFunction rearrange_levels(const std::vector<Cell>& levels) {
  std::vector<double> breaks{0.0};
  std::vector<double> values;
  breaks.reserve(levels.size() + 1);
  values.reserve(levels.size());
  double mass = 0.0;
  for (const Cell& level : levels) {
    mass += level.measure;
    breaks.push_back(mass);
    values.push_back(level.value);
  }
  return StepFunction(std::move(breaks), std::move(values), Continuity::kLeft, 0.0);
}

void check_exponent(double p) {
  if (!(p >= 1.0)) {
    throw Error(ErrorKind::kInvalidParameter, "L^p norm needs p >= 1");
  }
}

double finish_norm(double sum, double p) { return std::pow(sum, 1.0 / p); }

}  // namespace

SampledFunction::SampledFunction(std::vector<Cell> cells, Sampling sampling,
                                 double spacing)
    : cells_(std::move(cells)), sampling_(sampling), spacing_(spacing) {
  if (cells_.empty()) {
    throw Error(ErrorKind::kInvalidParameter, "sampled function has no cells");
  }
  for (const Cell& c : cells_) {
    if (!(c.measure >= 0.0) || !std::isfinite(c.measure)) {
      throw Error(ErrorKind::kInvalidParameter,
                  "cell measures must be finite and nonnegative");
    }
    if (!std::isfinite(c.value)) {
      throw Error(ErrorKind::kInvalidParameter, "cell values must be finite");
    }
    total_ += c.measure;
  }
  if (!(total_ > 0.0) || total_ > 1.0 + 1e-12) {
    throw Error(ErrorKind::kInvalidParameter,
                "total measure " + std::to_string(total_) + " outside (0, 1]");
  }
  if (sampling_ == Sampling::kGrid && !(spacing_ > 0.0)) {
    throw Error(ErrorKind::kInvalidParameter,
                "grid-sampled function needs a positive spacing");
  }
}

SampledFunction SampledFunction::from_grid(const WeightedInterval& space,
                                           const numerics::Grid& grid,
                                           const numerics::RealFunction& f) {
  if (grid.length() > space.length() * (1.0 + 1e-14)) {
    throw Error(ErrorKind::kOutOfDomain, "grid extends past the interval");
  }
  const auto nodes = grid.nodes();
  std::vector<Cell> cells;
  cells.reserve(nodes.size() - 1);
  const numerics::Tolerance tol{1e-11, 1e-15, 40};
  double left = space.cumulative(nodes[0]);
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const double b = std::min(nodes[i + 1], space.length());
    const double right = space.cumulative(b);
    const double mass = right - left;
    double value = 0.0;
    if (mass > 0.0) {
      value = numerics::integrate(
                  [&](double t) { return f(t) * space.density(t); }, nodes[i], b,
                  tol) /
              mass;
    } else {
      value = f(0.5 * (nodes[i] + b));
    }
    cells.push_back({std::max(mass, 0.0), value});
    left = right;
  }
  return SampledFunction(std::move(cells), Sampling::kGrid, grid.max_spacing());
}

SymmetrizedFunction::SymmetrizedFunction(ModelSpace model, double radius,
                                         StepFunction sharp)
    : model_(std::move(model)), radius_(radius), sharp_(std::move(sharp)) {}

double SymmetrizedFunction::operator()(double x) const {
  if (x < 0.0) {
    throw Error(ErrorKind::kOutOfDomain, "symmetrized function needs x >= 0");
  }
  if (x > radius_) return 0.0;
  const double s = std::min(model_.cumulative(x), sharp_.domain_end());
  return sharp_(s);
}

std::vector<double> SymmetrizedFunction::radial_breaks() const {
  std::vector<double> out;
  const auto breaks = sharp_.breaks();
  out.reserve(breaks.size());
  for (const double s : breaks) {
    out.push_back(s == 0.0 ? 0.0 : model_.inverse_cumulative(std::min(s, 1.0)));
  }
  return out;
}

namespace rearrangement {

StepFunction distribution(const SampledFunction& u) {
  auto levels = sorted_levels(u.cells());
  std::reverse(levels.begin(), levels.end());  // ascending |u|
  // Mass strictly above each level, accumulated from the top.
  std::vector<double> above(levels.size(), 0.0);
  double mass = 0.0;
  for (std::size_t i = levels.size(); i-- > 0;) {
    above[i] = mass;
    mass += levels[i].measure;
  }
  std::vector<double> breaks{0.0};
  std::vector<double> values;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i].value == 0.0) continue;  // contributes nothing for t >= 0
    values.push_back(above[i] + levels[i].measure);
    breaks.push_back(levels[i].value);
  }
  return StepFunction(std::move(breaks), std::move(values), Continuity::kRight, 0.0);
}

StepFunction decreasing_rearrangement(const SampledFunction& u) {
  return rearrange_levels(sorted_levels(u.cells()));
}

SymmetrizedFunction schwarz_symmetrize(const SampledFunction& u,
                                       const ModelSpace& model) {
  const double v = u.total_measure();
  if (!(v > 0.0 && v < 1.0)) {
    throw Error(ErrorKind::kMeasureOutOfRange,
                "symmetrization needs total measure in (0, 1), got " +
                    std::to_string(v));
  }
  return SymmetrizedFunction(model, model.inverse_cumulative(v),
                             decreasing_rearrangement(u));
}

double lp_norm(const SampledFunction& u, double p) {
  check_exponent(p);
  double result = 0.0;
  if (p == numerics::kInf) {
    for (const Cell& c : u.cells()) {
      if (c.measure > 0.0) result = std::max(result, std::abs(c.value));
    }
    return result;
  }
  for (const Cell& c : u.cells()) {
    result += c.measure * std::pow(std::abs(c.value), p);
  }
  return finish_norm(result, p);
}

double lp_norm(const StepFunction& u, double p) {
  check_exponent(p);
  const auto breaks = u.breaks();
  const auto values = u.values();
  double result = 0.0;
  for (std::size_t j = 0; j < values.size(); ++j) {
    const double width = breaks[j + 1] - breaks[j];
    if (p == numerics::kInf) {
      result = std::max(result, std::abs(values[j]));
    } else {
      result += width * std::pow(std::abs(values[j]), p);
    }
  }
  return p == numerics::kInf ? result : finish_norm(result, p);
}

double lp_norm(const SymmetrizedFunction& u, double p) {
  check_exponent(p);
  const auto radii = u.radial_breaks();
  const auto values = u.sharp().values();
  const ModelSpace& model = u.model();
  double result = 0.0;
  for (std::size_t j = 0; j < values.size(); ++j) {
    const double mass = model.cumulative(radii[j + 1]) - model.cumulative(radii[j]);
    if (p == numerics::kInf) {
      if (mass > 0.0) result = std::max(result, std::abs(values[j]));
    } else {
      result += mass * std::pow(std::abs(values[j]), p);
    }
  }
  return p == numerics::kInf ? result : finish_norm(result, p);
}

HardyLittlewood hardy_littlewood_check(const SampledFunction& u,
                                       std::span<const std::size_t> subset) {
  const auto cells = u.cells();
  std::vector<bool> seen(cells.size(), false);
  HardyLittlewood out;
  double mass = 0.0;
  double abs_integral = 0.0;
  for (const std::size_t i : subset) {
    if (i >= cells.size()) {
      throw Error(ErrorKind::kOutOfDomain, "cell index " + std::to_string(i) +
                                               " out of range");
    }
    if (seen[i]) {
      throw Error(ErrorKind::kInvalidParameter,
                  "cell index " + std::to_string(i) + " repeated");
    }
    seen[i] = true;
    mass += cells[i].measure;
    out.lhs += cells[i].measure * cells[i].value;
    abs_integral += cells[i].measure * std::abs(cells[i].value);
  }
  const StepFunction sharp = decreasing_rearrangement(u);
  out.rhs = sharp.integral_to(std::min(mass, sharp.domain_end()));
  // (u|_E)^sharp <= u^sharp on [0, m(E)], so equal integrals force equality.
  out.equality = std::abs(out.rhs - abs_integral) <=
                 1e-12 * std::max(1.0, std::abs(out.rhs));
  return out;
}

double monotone_compose_check(const SampledFunction& u,
                              const numerics::RealFunction& phi) {
  std::vector<Cell> composed;
  composed.reserve(u.cells().size());
  for (const Cell& c : u.cells()) {
    const double value = phi(std::abs(c.value));
    if (!(value >= 0.0)) {
      throw Error(ErrorKind::kInvalidParameter,
                  "phi must map [0, inf) into [0, inf)");
    }
    composed.push_back({c.measure, value});
  }
  const StepFunction lhs = decreasing_rearrangement(
      SampledFunction(std::move(composed), u.sampling(), u.spacing()));
  const StepFunction sharp = decreasing_rearrangement(u);
  std::vector<double> points(lhs.breaks().begin(), lhs.breaks().end());
  points.insert(points.end(), sharp.breaks().begin(), sharp.breaks().end());
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  // Midpoints between consecutive breaks of either function, plus s = 0.
  // Break points themselves are skipped: rounding in the accumulated masses
  // may shift a jump by an ulp between the two sides.
  double worst = std::abs(lhs(0.0) - phi(sharp(0.0)));
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    const double mid = 0.5 * (points[i] + points[i + 1]);
    worst = std::max(worst, std::abs(lhs(mid) - phi(sharp(mid))));
  }
  return worst;
}

}  // namespace rearrangement
}  // namespace talenti
