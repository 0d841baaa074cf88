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

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "talenti/model_space.hpp"
#include "talenti/numerics.hpp"
#include "talenti/radial_poisson.hpp"

// End-to-end symmetrization comparison on one-dimensional CD(K, N) spaces:
// solve on the instance, rearrange, solve the model problem with the
// rearranged datum, compare.
namespace talenti::comparison {

/// The interval [0, L - a] with density proportional to
/// sin^{N-1}(sqrt(K/(N-1)) (t + a)), normalized to mass one and tagged
/// CD(K, N). a = 0 returns the model interval itself. Throws kInvalidShift
/// unless 0 <= a < L/2.
WeightedInterval make_shifted_cap(double K, double N, double a);

struct ProblemInstance {
  WeightedInterval space;
  ModelSpace model;
  double v = 0.5;
  double p = 2.0;
  poisson::DataFunction f;
  std::string provenance;

  /// W^{-1}(v): the instance domain is [0, r1).
  double r1() const { return space.inverse_cumulative(v); }
};

/// Validates the CD tag (defect <= 1e-8), v in (0, 1) and p > 1.
ProblemInstance make_instance(WeightedInterval space, double v, double p,
                              poisson::DataFunction f, std::string provenance);

/// f^sharp of the instance datum, in whichever exact or approximate form
/// the data allows.
struct RearrangedData {
  numerics::RealFunction sharp;      // s -> f^sharp(s)
  numerics::RealFunction primitive;  // s -> int_0^s f^sharp
  std::vector<double> mass_breaks;   // jumps or kinks of f^sharp
  /// Zero when f^sharp is exact; otherwise the change in the model
  /// solution between two sampling resolutions.
  double grid_bound = 0.0;
};

RearrangedData rearrange_data(const ProblemInstance& instance,
                              std::size_t cells = 1 << 14);

/// The model problem on [0, H^{-1}(v)) with datum f^sharp o H.
poisson::RadialProblem model_problem(const ProblemInstance& instance,
                                     const RearrangedData& data);

struct ComparisonReport {
  /// max over the check points of (u* - w)^+.
  double pointwise_violation = 0.0;
  /// max |u* - w|; the equality defect on model instances with monotone f.
  double sharpness_gap = 0.0;
  /// w(0) - u*(0).
  double sup_margin = 0.0;
  double grid_bound = 0.0;
  /// r -> (int |u'|^r dm, int |w'|^r dm_model).
  std::map<double, std::pair<double, double>> gradient_gaps;
  double levy_gromov_min_ratio = 0.0;
  double chain_min = 0.0;
  double chain_max = 0.0;
};

ComparisonReport run_comparison(const ProblemInstance& instance,
                                std::span<const double> r_list,
                                std::size_t nodes = 4096);

/// sup{rho : u(rho) > t} for a nonincreasing radial solution.
double level_radius(const poisson::RadialSolution& u, double t);

/// min over levels in (0, sup u) of w(rho_t) / I(W(rho_t)), where w is the
/// instance density and I the model profile. Levels outside (0, sup u) are
/// skipped; returns +inf when every level is skipped. An empty level list
/// selects 256 evenly spaced levels.
double levy_gromov_radial(const ProblemInstance& instance,
                          const poisson::RadialSolution& u,
                          std::span<const double> levels = {});

struct ChainRow {
  double level = 0.0;
  double mu = 0.0;
  double dmu = 0.0;
  /// -mu'(t) I(mu)^{-p/(p-1)} (int_0^mu f^sharp)^{1/(p-1)}; >= 1 in theory.
  double value = 0.0;
};

/// The level-set inequality traced on 256 levels in (0, 0.99 sup u). mu'
/// uses five-point differences, one-sided next to kinks of mu.
std::vector<ChainRow> chain_inequality_trace(const ProblemInstance& instance,
                                             const poisson::RadialSolution& u,
                                             const RearrangedData& data);

}  // namespace talenti::comparison
