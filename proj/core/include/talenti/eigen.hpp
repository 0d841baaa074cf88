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
#include <vector>

#include "talenti/model_space.hpp"
#include "talenti/radial_poisson.hpp"

// First Dirichlet eigenpairs of -(w |z'|^{p-2} z')' = lambda w |z|^{p-2} z on
// sublevel intervals [0, r_v] of a weighted interval, and the comparison
// statements built on them.
namespace talenti::eigen {

struct EigenPair {
  double lambda = 0.0;
  double p = 2.0;
  double v = 0.0;
  poisson::RadialSolution z;
  std::string normalization;
  /// int |z'|^p dm / int |z|^p dm, accumulated along the shooting run.
  double rayleigh = 0.0;

  double radius() const { return z.radius(); }
};

struct ShootingOptions {
  double rel = 1e-11;
  double abs = 1e-14;
  /// Relative width at which the lambda bisection stops.
  double lambda_rel = 1e-13;
  std::size_t nodes = 2049;
};

/// Shooting from z(0) = 1, z'(0) = 0 with a Dormand–Prince 5(4) integrator;
/// lambda is bisected until the first zero of z sits at r_v = W^{-1}(v).
/// Throws kInvalidMass unless 0 < v < total mass, kNonConvergence if the
/// bracket cannot be established.
EigenPair first_eigenpair(const WeightedInterval& space, double v, double p,
                          const ShootingOptions& options = {});

/// Independent estimate: inverse power iteration for the discrete p-Rayleigh
/// quotient of piecewise-linear elements on `cells` uniform cells. Each
/// iterate solves the discrete p-Poisson problem exactly through its flux.
double fe_rayleigh_eigenvalue(const WeightedInterval& space, double v, double p,
                              std::size_t cells = 2048);

/// alpha in (0, v_upper] with lambda_model(alpha) = lambda_target to
/// relative `rel`. Throws kNoBracket when lambda_target lies below
/// lambda_model(v_upper) by more than that tolerance, and kNonConvergence if
/// the computed eigenvalues fail to decrease across the bracket.
double alpha_from_lambda(const ModelSpace& model, double p, double lambda_target,
                         double v_upper, double rel = 1e-10);

struct FaberKrahn {
  double lambda_instance = 0.0;
  double lambda_model = 0.0;
  double margin = 0.0;
};

/// Compares the instance eigenvalue with that of the model of its CD tag.
FaberKrahn faber_krahn_check(const WeightedInterval& space, double v, double p);

/// The model eigenpair with the same eigenvalue as `instance`.
EigenPair model_partner(const EigenPair& instance, const ModelSpace& model);

/// int |u|^t dm over the profile's interval.
double power_integral(const poisson::RadialSolution& u, double t);

/// c with int (c z)^r dm_model = int u^r dm.
double matching_scale(const EigenPair& u, const EigenPair& z, double r);

struct ChitiReport {
  double crossing = 0.0;
  std::size_t sign_changes = 0;
  double max_violation = 0.0;
  double scale = 1.0;
  /// u* and c z agree within the tolerance band everywhere.
  bool degenerate = false;
};

/// Compares u* (the instance eigenfunction transported by W^{-1} o H) with
/// c z on [0, r_alpha] after matching L^r norms. Differences within
/// +-`band` count as ties. Throws kNoCrossing when u* - c z keeps one strict
/// sign outside the band.
ChitiReport chiti_compare(const EigenPair& u, const EigenPair& z, double r,
                          double band = 1e-6);

struct HolderReport {
  double r = 1.0;
  std::vector<double> t_grid;
  std::map<double, double> ratios_instance;
  std::map<double, double> ratios_model;
};

/// ||.||_t / ||.||_r for the instance and model eigenfunctions.
HolderReport reverse_holder(const EigenPair& u, const EigenPair& z, double r,
                            std::span<const double> t_grid);

/// max over t in Q of ||z||_t^{p-1} - ||u||_t^{p-1} (p >= 2) or
/// (||z||_t - ||u||_t)^{p-1} (1 < p < 2), with z scaled so that the
/// L^{p-1} norms agree; clamped below at zero.
double stability_deficit(const EigenPair& u, const EigenPair& z, double p,
                         std::span<const double> Q);

struct SlopeIdentity {
  /// max over samples of (lhs - rhs) / rhs.
  double max_excess = 0.0;
  /// max over samples of |lhs - rhs| / rhs.
  double max_relative_gap = 0.0;
};

/// -d u^sharp/ds against lambda^{1/(p-1)} I(s)^{-p/(p-1)}
/// (int_0^s (u^sharp)^{p-1})^{1/(p-1)} on `samples` masses in (0, v).
SlopeIdentity eigen_slope_identity(const EigenPair& pair, const ModelSpace& model,
                                   std::size_t samples = 200);

}  // namespace talenti::eigen
