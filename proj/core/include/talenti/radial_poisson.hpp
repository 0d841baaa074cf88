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

#include <span>
#include <string>
#include <vector>

#include "talenti/numerics.hpp"
#include "talenti/weighted_interval.hpp"

// Dirichlet problem for the weighted one-dimensional p-Laplacian
//
//   -(w(r) |u'|^{p-2} u')' = w(r) f(r)  on [0, r1),  u'(0) = 0,  u(r1) = 0,
//
// solved in closed form by two quadratures.
namespace talenti::poisson {

/// Right-hand side data with the structural facts the solvers exploit.
struct DataFunction {
  numerics::RealFunction value;
  /// Jumps or kinks; quadrature cells are aligned to them.
  std::vector<double> breakpoints;
  bool nonincreasing = false;
  /// Constant between consecutive breakpoints.
  bool piecewise_constant = false;
  std::string label;

  double operator()(double t) const { return value(t); }

  static DataFunction constant(double c);
  /// max(cos t, 0).
  static DataFunction cospos();
  /// h1 on [0, split), h2 from split on.
  static DataFunction two_level(double h1, double h2, double split);
};

struct RadialProblem {
  WeightedInterval space;
  double p = 2.0;
  DataFunction f;
  double r1 = 0.0;
  /// Optional replacement for r -> integral of f over [0, r]; used when the
  /// load is known in closed form (for example through a rearrangement).
  numerics::RealFunction load;

  double q() const { return p / (p - 1.0); }
};

/// Nodal values of u and u' on [0, r1] plus, when the producer has them,
/// evaluators that are exact up to quadrature tolerance between nodes.
class RadialSolution {
 public:
  RadialSolution(numerics::Grid grid, std::vector<double> values,
                 std::vector<double> slopes, double p, WeightedInterval space,
                 numerics::RealFunction exact_value = {},
                 numerics::RealFunction exact_slope = {});

  const numerics::Grid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  std::span<const double> slopes() const { return slopes_; }
  double p() const { return p_; }
  const WeightedInterval& space() const { return space_; }
  double radius() const { return grid_.length(); }

  /// u(rho); zero for rho >= r1. Throws kOutOfDomain for rho < 0.
  double value(double rho) const;
  double derivative(double rho) const;
  double sup() const;

 private:
  numerics::Grid grid_;
  std::vector<double> values_;
  std::vector<double> slopes_;
  double p_;
  WeightedInterval space_;
  numerics::RealFunction exact_value_;
  numerics::RealFunction exact_slope_;
  numerics::MonotoneCubic interpolant_;
};

/// u(rho) = int_rho^{r1} ((1/w(r)) int_0^r f dm)^{1/(p-1)} dr on a cosine
/// grid with `nodes` points refined at the data breakpoints. Throws
/// kNegativeData if f < 0 at a sample point and kIntegrabilityFailure if the
/// load integral diverges.
RadialSolution solve_explicit(const RadialProblem& problem,
                              std::size_t nodes = 4096);

/// The same solution written in the mass variable sigma = W(r):
/// u = int_{W(rho)}^{W(r1)} (1/J(sigma)) (F(sigma)/J(sigma))^{1/(p-1)} dsigma
/// with J the profile of the interval and F the primitive of `fsharp`.
/// Produces the solution for the datum f^sharp o W.
RadialSolution solve_mass_form(const RadialProblem& problem,
                               const numerics::StepFunction& fsharp,
                               std::size_t nodes = 4096);
/// Variant taking F directly, for smooth rearranged data.
RadialSolution solve_mass_form(const RadialProblem& problem,
                               const numerics::RealFunction& primitive,
                               std::size_t nodes = 4096);

/// max over hat test functions phi vanishing at r1 of
/// |int |u'|^{p-2} u' phi' dm - int f phi dm| / ||phi||_{W^{1,p}}.
/// Hats are centred at `hats` interior Chebyshev nodes.
double weak_residual(const RadialSolution& solution, const RadialProblem& problem,
                     std::size_t hats = 32);

/// int_0^{r1} |u'|^r dm, computed in the physical variable. Needs 1 <= r <= p.
double gradient_norm(const RadialSolution& solution, double r);

/// s -> integral of f dm over [0, W^{-1}(s)] for s in [0, v], tabulated on
/// [0, W^{-1}(v)] once. The primitive taken by gradient_norm_mass.
numerics::RealFunction load_in_mass(const WeightedInterval& space, const DataFunction& f,
                                    double v);

/// int_0^v (F(xi)/J(xi))^{r/(p-1)} dxi: the same quantity in the mass
/// variable, for the solution with load primitive F on `space`.
double gradient_norm_mass(const WeightedInterval& space, double p, double r,
                          double v, const numerics::RealFunction& primitive);

}  // namespace talenti::poisson
