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
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "talenti/error.hpp"

namespace talenti::numerics {

using RealFunction = std::function<double(double)>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Accuracy request shared by the quadrature and root-finding kernels.
struct Tolerance {
  double rel = 1e-10;
  double abs = 1e-12;
  int max_subdivisions = 60;

  /// Throws kInvalidParameter unless rel >= 8 eps, abs > 0 and
  /// max_subdivisions > 0.
  void validate() const;

  /// Tolerance for inverting monotone maps to (nearly) full precision.
  static Tolerance tight();
};

/// Strictly increasing nodes on [0, L] with both endpoints stored exactly.
class Grid {
 public:
  explicit Grid(std::vector<double> nodes);

  static Grid uniform(double length, std::size_t count);
  /// Nodes clustered like a Chebyshev–Lobatto set towards both ends.
  static Grid cosine(double length, std::size_t count);

  /// Returns a copy with the given interior abscissae inserted. Existing
  /// nodes closer than 1e-12 * L to a breakpoint are replaced by it.
  Grid with_breakpoints(std::span<const double> breakpoints) const;

  std::span<const double> nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  double length() const { return nodes_.back(); }
  double operator[](std::size_t i) const { return nodes_[i]; }
  double max_spacing() const;

  /// Index i of the cell [x_i, x_{i+1}] containing x (clamped).
  std::size_t locate(double x) const;

 private:
  std::vector<double> nodes_;
};

/// Adaptive Gauss–Kronrod (7/15) quadrature of f over [a, b].
///
/// Panels touching an endpoint keep being bisected while they dominate the
/// error, which refines geometrically towards integrable power-law
/// singularities. The sequence of contributions shed by each endpoint
/// panel is watched: a non-decaying sequence of 40 steps, each larger than
/// rel times the running sum, raises kDivergence; a stable geometric
/// sequence is summed in closed form once max_subdivisions is reached.
/// Raises kNonConvergence when the error target cannot be met. Endpoint
/// panels are not split below about 1e3 ulp of their midpoint, so a
/// singularity at a nonzero endpoint is resolved only to that scale;
/// substitute to move it to 0 when full accuracy is needed.
double integrate(const RealFunction& f, double a, double b,
                 const Tolerance& tol = {});

/// Brent's method on a sign-changing bracket, with bisection fallback.
/// Returns x in [lo, hi] with |g(x)| <= tol.abs or a bracket narrower than
/// tol.rel * |x| + tol.abs. Raises kNoBracket when g(lo) g(hi) > 0.
double find_root(const RealFunction& g, double lo, double hi,
                 const Tolerance& tol = {});

enum class Continuity { kRight, kLeft };

/// Piecewise-constant function on [breaks[0], breaks.back()] extended by a
/// constant tail to the right of the last break.
///
/// Piece j carries values[j] between breaks[j] and breaks[j+1]. With
/// kRight the pieces are [b_j, b_{j+1}); with kLeft they are (b_j, b_{j+1}]
/// except that the first piece also owns b_0.
class StepFunction {
 public:
  StepFunction(std::vector<double> breaks, std::vector<double> values,
               Continuity continuity, double tail = 0.0);

  double operator()(double x) const;

  std::span<const double> breaks() const { return breaks_; }
  std::span<const double> values() const { return values_; }
  Continuity continuity() const { return continuity_; }
  double tail() const { return tail_; }
  std::size_t pieces() const { return values_.size(); }
  double domain_begin() const { return breaks_.front(); }
  double domain_end() const { return breaks_.back(); }

  /// Integral from domain_begin() to x; x beyond the last break integrates
  /// the tail as well.
  double integral_to(double x) const;

  bool is_nonincreasing() const;

 private:
  std::vector<double> breaks_;
  std::vector<double> values_;
  std::vector<double> prefix_;  // integral up to breaks_[j]
  Continuity continuity_;
  double tail_;
};

/// inf{ t : m(t) < s } for s > 0, and inf{ t : m(t) <= 0 } (the essential
/// supremum level) for s = 0. m must be nonincreasing; returns +inf when the
/// set is empty.
double generalized_inverse(const StepFunction& m, double s);

/// Piecewise-cubic Hermite interpolant. Without explicit slopes the
/// Fritsch–Butland harmonic-mean slopes keep it monotone on monotone data.
class MonotoneCubic {
 public:
  MonotoneCubic(std::vector<double> x, std::vector<double> y);
  MonotoneCubic(std::vector<double> x, std::vector<double> y,
                std::vector<double> slopes);

  double operator()(double x) const;
  double derivative(double x) const;

 private:
  std::vector<double> x_, y_, d_;
};

}  // namespace talenti::numerics
