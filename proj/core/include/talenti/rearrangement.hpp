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

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "talenti/model_space.hpp"
#include "talenti/numerics.hpp"

namespace talenti {

struct Cell {
  double measure = 0.0;
  double value = 0.0;
};

enum class Sampling {
  kAtomic,  // cells are exact atoms of the measure
  kGrid,    // cells approximate a function sampled on a grid
};

/// A function on a finite measure space, stored as (measure, value) cells.
class SampledFunction {
 public:
  /// Throws kInvalidParameter for negative or non-finite cells, or when the
  /// total measure is not in (0, 1].
  SampledFunction(std::vector<Cell> cells, Sampling sampling = Sampling::kAtomic,
                  double spacing = 0.0);

  /// Cell averages of f over the cells of `grid` restricted to [0, radius],
  /// measured with the weighted interval's density.
  static SampledFunction from_grid(const WeightedInterval& space,
                                   const numerics::Grid& grid,
                                   const numerics::RealFunction& f);

  std::span<const Cell> cells() const { return cells_; }
  double total_measure() const { return total_; }
  Sampling sampling() const { return sampling_; }
  double spacing() const { return spacing_; }

 private:
  std::vector<Cell> cells_;
  double total_ = 0.0;
  Sampling sampling_;
  double spacing_;
};

/// u^sharp composed with the model cumulative mass, on [0, r_v].
class SymmetrizedFunction {
 public:
  SymmetrizedFunction(ModelSpace model, double radius,
                      numerics::StepFunction sharp);

  double operator()(double x) const;
  double radius() const { return radius_; }
  const ModelSpace& model() const { return model_; }
  const numerics::StepFunction& sharp() const { return sharp_; }
  /// Radii H^{-1}(s) of the breaks of u^sharp, 0 and r_v included.
  std::vector<double> radial_breaks() const;

 private:
  ModelSpace model_;
  double radius_;
  numerics::StepFunction sharp_;
};

namespace rearrangement {

/// mu(t) = m({|u| > t}) on [0, inf), right-continuous.
numerics::StepFunction distribution(const SampledFunction& u);

/// u^sharp on [0, m(Omega)]: nonincreasing, left-continuous, equal to the
/// essential supremum at 0 and extended by 0 past m(Omega). Built by sorting
/// cells by |value|; equal values merge into one step.
numerics::StepFunction decreasing_rearrangement(const SampledFunction& u);

/// Throws kMeasureOutOfRange unless the total measure lies in (0, 1).
SymmetrizedFunction schwarz_symmetrize(const SampledFunction& u,
                                       const ModelSpace& model);

/// Weighted L^p norms; p = numerics::kInf gives the essential supremum.
double lp_norm(const SampledFunction& u, double p);
/// Against Lebesgue measure on [domain_begin, domain_end].
double lp_norm(const numerics::StepFunction& u, double p);
/// Against the model measure on [0, r_v].
double lp_norm(const SymmetrizedFunction& u, double p);

struct HardyLittlewood {
  double lhs = 0.0;  // integral of u over E
  double rhs = 0.0;  // integral of u^sharp over [0, m(E)]
  bool equality = false;
};

/// Both sides of the Hardy–Littlewood inequality for the sub-collection of
/// cells `subset`. `equality` is set when the restriction of u to E
/// rearranges to the head of u^sharp.
HardyLittlewood hardy_littlewood_check(const SampledFunction& u,
                                       std::span<const std::size_t> subset);

/// sup over an evaluation grid of |(phi o |u|)^sharp - phi o u^sharp| for a
/// strictly increasing continuous phi.
double monotone_compose_check(const SampledFunction& u,
                              const numerics::RealFunction& phi);

}  // namespace rearrangement
}  // namespace talenti
