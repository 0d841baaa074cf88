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

#include "talenti/model_space.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace talenti {

namespace {

double checked_length(double K, double N) {
  if (!(K > 0.0) || !std::isfinite(K)) {
    throw Error(ErrorKind::kInvalidParameter, "model space needs K > 0");
  }
  if (!(N > 1.0) || !std::isfinite(N)) {
    throw Error(ErrorKind::kInvalidParameter, "model space needs N > 1");
  }
  return std::numbers::pi * std::sqrt((N - 1.0) / K);
}

WeightedInterval build_space(double K, double N, double length) {
  const double kappa = std::sqrt(K / (N - 1.0));
  const double power = N - 1.0;
  auto raw = [kappa, power, length](double t) {
    if (t <= 0.0 || t >= length) return 0.0;
    return std::pow(std::max(std::sin(kappa * t), 0.0), power);
  };
  WeightedInterval::Options options;
  options.symmetric = true;
  options.label = "model";
  return WeightedInterval(length, raw, CdTag{K, N}, options);
}

// Unnormalized mass of the model interval, integrated independently of the
// cumulative table: sin^{N-1} over [0, pi] scaled by 1/kappa.
double model_normalization(double K, double N) {
  const double kappa = std::sqrt(K / (N - 1.0));
  const double power = N - 1.0;
  const double half = numerics::integrate(
      [power](double s) { return std::pow(std::sin(s), power); }, 0.0,
      0.5 * std::numbers::pi, numerics::Tolerance{1e-14, 1e-300, 60});
  return 2.0 * half / kappa;
}

}  // namespace

ModelSpace::ModelSpace(double K, double N)
    : K_(K),
      N_(N),
      length_(checked_length(K, N)),
      normalization_(model_normalization(K, N)),
      space_(build_space(K, N, length_)) {}

double ModelSpace::density(double t) const {
  if (t < 0.0 || t > length_) {
    throw Error(ErrorKind::kOutOfDomain,
                "t = " + std::to_string(t) + " outside the model interval");
  }
  if (t == 0.0 || t == length_) return 0.0;
  const double kappa = std::sqrt(K_ / (N_ - 1.0));
  return std::pow(std::max(std::sin(kappa * t), 0.0), N_ - 1.0) / normalization_;
}

double ModelSpace::cumulative(double t) const { return space_.cumulative(t); }

double ModelSpace::inverse_cumulative(double v) const {
  if (v < 0.0 || v > 1.0) {
    throw Error(ErrorKind::kOutOfDomain,
                "v = " + std::to_string(v) + " outside [0, 1]");
  }
  return space_.inverse_cumulative(v);
}

double ModelSpace::isoperimetric_profile(double v) const {
  if (v <= 0.0 || v >= 1.0) {
    if (v == 0.0 || v == 1.0) return 0.0;
    throw Error(ErrorKind::kOutOfDomain,
                "v = " + std::to_string(v) + " outside [0, 1]");
  }
  return density(inverse_cumulative(v));
}

ModelConstants ModelSpace::constants() const {
  ModelConstants c;
  c.gamma1 = std::pow(K_ / (N_ - 1.0), 0.5 * (N_ - 1.0)) / normalization_;
  c.gamma2 = c.gamma1 / N_;
  return c;
}

}  // namespace talenti
