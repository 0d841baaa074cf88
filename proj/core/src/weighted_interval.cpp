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

#include "talenti/weighted_interval.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace talenti {

using numerics::RealFunction;
using numerics::Tolerance;

struct WeightedInterval::Impl {
  double length = 0.0;
  RealFunction raw;
  double scale = 1.0;
  std::vector<double> nodes;
  std::vector<double> cum;  // unscaled cumulative mass at nodes
  double raw_total = 0.0;
  bool symmetric = false;
  std::optional<CdTag> cd;
  std::string label;
  Tolerance tol;

  double raw_density(double t) const { return std::max(raw(t), 0.0); }

  double raw_cumulative_direct(double t) const {
    auto it = std::upper_bound(nodes.begin(), nodes.end(), t);
    std::size_t i = it == nodes.begin() ? 0 : static_cast<std::size_t>(it - nodes.begin()) - 1;
    i = std::min(i, nodes.size() - 2);
    if (t == nodes[i]) return cum[i];
    return cum[i] + numerics::integrate(
                        [this](double s) { return raw_density(s); }, nodes[i], t, tol);
  }

  double raw_cumulative(double t) const {
    if (t <= 0.0) return 0.0;
    if (t >= length) return raw_total;
    if (symmetric && t > 0.5 * length) {
      return raw_total - raw_cumulative_direct(length - t);
    }
    return raw_cumulative_direct(t);
  }

  double raw_inverse(double m) const {
    if (m <= 0.0) return 0.0;
    if (m >= raw_total) return length;
    if (symmetric && m > 0.5 * raw_total) {
      return length - raw_inverse(raw_total - m);
    }
    auto it = std::upper_bound(cum.begin(), cum.end(), m);
    std::size_t i = static_cast<std::size_t>(it - cum.begin()) - 1;
    i = std::min(i, nodes.size() - 2);
    if (m == cum[i]) return nodes[i];
    const double lo = nodes[i];
    const double base = cum[i];
    auto g = [&](double t) {
      return base + numerics::integrate(
                        [this](double s) { return raw_density(s); }, lo, t, tol) -
             m;
    };
    return numerics::find_root(g, lo, nodes[i + 1], Tolerance::tight());
  }
};

WeightedInterval::WeightedInterval(double length, RealFunction density,
                                   std::optional<CdTag> cd, Options options) {
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw Error(ErrorKind::kInvalidParameter, "weighted interval needs L > 0");
  }
  if (options.table_nodes < 2) {
    throw Error(ErrorKind::kInvalidParameter, "cumulative table needs >= 2 nodes");
  }
  options.tol.validate();
  auto impl = std::make_shared<Impl>();
  impl->length = length;
  impl->raw = std::move(density);
  impl->symmetric = options.symmetric;
  impl->cd = cd;
  impl->label = std::move(options.label);
  impl->tol = options.tol;
  const auto grid = numerics::Grid::cosine(length, options.table_nodes);
  impl->nodes.assign(grid.nodes().begin(), grid.nodes().end());
  impl->cum.assign(impl->nodes.size(), 0.0);
  const Impl& ref = *impl;
  for (std::size_t i = 0; i + 1 < impl->nodes.size(); ++i) {
    impl->cum[i + 1] =
        impl->cum[i] + numerics::integrate(
                           [&ref](double s) { return ref.raw_density(s); },
                           impl->nodes[i], impl->nodes[i + 1], impl->tol);
  }
  impl->raw_total = impl->cum.back();
  if (!(impl->raw_total > 0.0)) {
    throw Error(ErrorKind::kInvalidParameter, "density has zero total mass");
  }
  impl->scale = options.normalize ? 1.0 / impl->raw_total : 1.0;
  if (impl->scale * impl->raw_total > 1.0 + 1e-12) {
    throw Error(ErrorKind::kInvalidParameter,
                "weighted interval total mass exceeds 1");
  }
  // Positivity on the open interval, sampled at the table nodes.
  for (std::size_t i = 1; i + 1 < impl->nodes.size(); ++i) {
    if (!(impl->raw(impl->nodes[i]) > 0.0)) {
      throw Error(ErrorKind::kInvalidParameter,
                  "density must be positive inside (0, L)");
    }
  }
  impl_ = std::move(impl);
}

double WeightedInterval::length() const { return impl_->length; }

double WeightedInterval::total_mass() const {
  return impl_->scale * impl_->raw_total;
}

double WeightedInterval::density(double t) const {
  if (t < 0.0 || t > impl_->length) {
    throw Error(ErrorKind::kOutOfDomain,
                "t = " + std::to_string(t) + " outside [0, L]");
  }
  return impl_->scale * impl_->raw_density(t);
}

double WeightedInterval::cumulative(double t) const {
  if (t < 0.0 || t > impl_->length) {
    throw Error(ErrorKind::kOutOfDomain,
                "t = " + std::to_string(t) + " outside [0, L]");
  }
  return impl_->scale * impl_->raw_cumulative(t);
}

double WeightedInterval::inverse_cumulative(double mass) const {
  const double total = total_mass();
  if (mass < 0.0 || mass > total * (1.0 + 1e-14)) {
    throw Error(ErrorKind::kOutOfDomain,
                "mass " + std::to_string(mass) + " outside [0, total]");
  }
  return impl_->raw_inverse(mass / impl_->scale);
}

double WeightedInterval::profile(double mass) const {
  return density(inverse_cumulative(mass));
}

const std::optional<CdTag>& WeightedInterval::cd_tag() const { return impl_->cd; }

const std::string& WeightedInterval::label() const { return impl_->label; }

bool WeightedInterval::is_symmetric() const { return impl_->symmetric; }

double WeightedInterval::cd_defect(const CdTag& tag, std::size_t samples) const {
  if (!(tag.K > 0.0) || !(tag.N > 1.0) || samples < 2) {
    throw Error(ErrorKind::kInvalidParameter, "CD check needs K > 0, N > 1");
  }
  const double exponent = 1.0 / (tag.N - 1.0);
  const double kappa2 = tag.K / (tag.N - 1.0);
  const double L = impl_->length;
  auto root = [&](double t) {
    return std::pow(density(std::clamp(t, 0.0, L)), exponent);
  };
  const double h = 2e-3 * L;
  auto second = [&](double t, double step) {
    return (root(t + step) - 2.0 * root(t) + root(t - step)) / (step * step);
  };
  double worst = -numerics::kInf;
  double scale = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    const double t = h + (L - 2.0 * h) * static_cast<double>(k) /
                             static_cast<double>(samples - 1);
    const double d2 = (4.0 * second(t, 0.5 * h) - second(t, h)) / 3.0;
    const double g = root(t);
    worst = std::max(worst, d2 + kappa2 * g);
    scale = std::max(scale, g);
  }
  return worst / scale;
}

}  // namespace talenti
