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

#include <memory>
#include <optional>
#include <string>

#include "talenti/numerics.hpp"

namespace talenti {

/// Curvature-dimension parameters an interval claims to satisfy.
struct CdTag {
  double K = 0.0;
  double N = 0.0;
};

/// A one-dimensional weighted measure space ([0, L], w dx).
///
/// The cumulative mass W is tabulated once at construction and evaluated
/// between table nodes by local quadrature, so W and its inverse are
/// accurate to the quadrature tolerance rather than an interpolation order.
/// Instances are immutable and share their tables; copies are cheap.
class WeightedInterval {
 public:
  struct Options {
    /// Rescale the density so that the total mass is exactly one.
    bool normalize = true;
    /// w(t) = w(L - t); lets W and W^{-1} use the better conditioned half.
    bool symmetric = false;
    std::size_t table_nodes = 1024;
    numerics::Tolerance tol{1e-13, 1e-300, 60};
    std::string label = "custom";
  };

  WeightedInterval(double length, numerics::RealFunction density,
                   std::optional<CdTag> cd, Options options);

  double length() const;
  double total_mass() const;
  double density(double t) const;
  double cumulative(double t) const;
  double inverse_cumulative(double mass) const;
  /// w(W^{-1}(m)): the boundary weight of the sublevel interval of mass m.
  double profile(double mass) const;
  const std::optional<CdTag>& cd_tag() const;
  const std::string& label() const;
  bool is_symmetric() const;

  /// Largest value of (w^{1/(N-1)})'' + K/(N-1) w^{1/(N-1)} over `samples`
  /// interior points, normalized by max w^{1/(N-1)}. Second derivatives use
  /// Richardson-extrapolated central differences. Nonpositive (up to
  /// round-off) for densities satisfying CD(K, N).
  double cd_defect(const CdTag& tag, std::size_t samples = 1000) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

}  // namespace talenti
