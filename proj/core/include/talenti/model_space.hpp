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

#include "talenti/weighted_interval.hpp"

namespace talenti {

/// Small-t constants of the model density: h(t) <= gamma1 t^{N-1} and
/// H(t) <= gamma2 t^N.
struct ModelConstants {
  double gamma1 = 0.0;
  double gamma2 = 0.0;
};

/// The one-dimensional model space for the curvature-dimension condition
/// CD(K, N): the interval [0, pi sqrt((N-1)/K)] carrying the probability
/// density h(t) = sin^{N-1}(t sqrt(K/(N-1))) / c.
class ModelSpace {
 public:
  /// Throws kInvalidParameter unless K > 0 and N > 1.
  ModelSpace(double K, double N);

  double K() const { return K_; }
  double N() const { return N_; }
  double length() const { return length_; }
  /// c = integral of sin^{N-1}(t sqrt(K/(N-1))) over [0, L].
  double normalization() const { return normalization_; }

  /// h(t). Exactly zero at both endpoints. Throws kOutOfDomain off [0, L].
  double density(double t) const;
  /// H(t) = m([0, t]).
  double cumulative(double t) const;
  /// H^{-1}(v) for v in [0, 1].
  double inverse_cumulative(double v) const;
  /// I(v) = h(H^{-1}(v)), the isoperimetric profile.
  double isoperimetric_profile(double v) const;
  ModelConstants constants() const;

  const WeightedInterval& as_weighted_interval() const { return space_; }

 private:
  double K_;
  double N_;
  double length_;
  double normalization_;
  WeightedInterval space_;
};

inline ModelSpace make_model(double K, double N) { return ModelSpace(K, N); }

}  // namespace talenti
