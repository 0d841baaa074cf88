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

#include <optional>

#include "talenti/model_space.hpp"
#include "talenti/radial_poisson.hpp"

// Constants of the L^infinity and L^t bounds for solutions of the
// p-Poisson problem with L^s data, expressed through the model profile I:
//
//   c1 = int_0^v xi^{(s-1)/(s(p-1))} I(xi)^{-p/(p-1)} dxi,
//   c2 = (int_0^v (int_x^v same integrand dxi)^t dx)^{1/t}.
//
// A divergent constant is reported as +infinity, not as an error.
namespace talenti::sobolev {

inline bool is_divergent(double c) { return c == numerics::kInf; }

struct EmbeddingConstants {
  double K = 0.0;
  double N = 0.0;
  double v = 0.0;
  double p = 0.0;
  double s = 0.0;
  std::optional<double> t;
  double c1 = 0.0;
  double c2 = 0.0;
};

/// s may be numerics::kInf. Finite exactly when s > N/p. On [0, 1e-6 v] the
/// integrand is split into its leading power, from I ~ N gamma2^{1/N}
/// xi^{(N-1)/N}, integrated in closed form, and a quadrature correction.
/// Throws kInvalidParameter for K <= 0, N <= 1, v outside (0, 1), p <= 1
/// or s <= 0.
double c1_constant(double K, double N, double v, double p, double s);

/// Finite exactly when t/(p-1) (1/s - p/N) < 1. Throws kInvalidParameter for
/// t < 1 in addition to the c1 conditions.
double c2_constant(double K, double N, double v, double p, double s, double t);

EmbeddingConstants embedding_constants(double K, double N, double v, double p,
                                       double s, std::optional<double> t = {});

struct EmbeddingCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
};

/// lhs = ||u||_{L^inf} (no t) or ||u||_{L^t}; rhs = c ||f||_{L^s}^{1/(p-1)}
/// with the constant of the CD tag of u's interval and v = W(r1).
EmbeddingCheck check_embedding(const poisson::RadialSolution& u,
                               const poisson::DataFunction& f, double s,
                               std::optional<double> t = {});

}  // namespace talenti::sobolev
