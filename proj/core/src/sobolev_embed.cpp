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

#include "talenti/sobolev_embed.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace talenti::sobolev {

using numerics::kInf;
using numerics::Tolerance;

namespace {

// Relative width within which 1/s and p/N are treated as equal, so that
// s = N/p typed as a decimal lands on the boundary case.
constexpr double kBoundaryBand = 1e-12;

struct Integrand {
  ModelSpace model;
  double v;
  double a;      // exponent of xi
  double b;      // exponent of 1/I
  double lead;   // C in g(xi) ~ C xi^e near 0
  double e;      // a - b (N-1)/N
  double kappa;  // 1/s - p/N; the sign decides integrability
  double xi0;

  double operator()(double xi) const {
    return std::pow(xi, a) * std::pow(model.isoperimetric_profile(xi), -b);
  }

  /// g(xi) / (C xi^e) - 1, evaluated in logarithms so tiny xi stays finite.
  double ratio_excess(double xi) const {
    const double I = model.isoperimetric_profile(xi);
    return std::expm1((a - e) * std::log(xi) - b * std::log(I) - std::log(lead));
  }

  /// int_0^{xi0} g for e > -1: the closed-form leading term plus the
  /// correction C int xi^e (ratio - 1), which is O(xi^{e + 2/N}). Below
  /// 1e-30 xi0 the correction is dropped.
  double refined_head() const {
    const double leading = head(0.0);
    const Tolerance tol{1e-10, 1e-14 * leading, 60};
    double correction = 0.0;
    double hi = xi0;
    for (int decade = 0; decade < 30; ++decade) {
      const double lo = 0.1 * hi;
      correction += numerics::integrate(
          [&](double xi) { return std::pow(xi, e) * ratio_excess(xi); }, lo, hi, tol);
      hi = lo;
    }
    return leading + lead * correction;
  }

  /// int_x^{xi0} C xi^e dxi for 0 <= x <= xi0 (inf when it diverges).
  double head(double x) const {
    if (kappa == 0.0) return x == 0.0 ? kInf : lead * std::log(xi0 / x);
    const double k = e + 1.0;
    if (k < 0.0 && x == 0.0) return kInf;
    return lead * (std::pow(xi0, k) - std::pow(x, k)) / k;
  }
};

Integrand make_integrand(double K, double N, double v, double p, double s) {
  if (!(v > 0.0 && v < 1.0)) {
    throw Error(ErrorKind::kInvalidParameter, "v must lie in (0, 1)");
  }
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw Error(ErrorKind::kInvalidParameter, "p must be > 1");
  }
  if (!(s > 0.0)) {
    throw Error(ErrorKind::kInvalidParameter, "s must be > 0");
  }
  ModelSpace model(K, N);  // validates K and N
  const double inv_s = s == kInf ? 0.0 : 1.0 / s;
  const double a = (1.0 - inv_s) / (p - 1.0);
  const double b = p / (p - 1.0);
  const double gamma2 = model.constants().gamma2;
  const double lead = std::pow(N * std::pow(gamma2, 1.0 / N), -b);
  double kappa = inv_s - p / N;
  if (std::abs(kappa) <= kBoundaryBand * (p / N)) kappa = 0.0;
  const double e = kappa == 0.0 ? -1.0 : a - b * (N - 1.0) / N;
  return Integrand{std::move(model), v, a, b, lead, e, kappa, 1e-6 * v};
}

const Tolerance kTol{1e-11, 1e-300, 60};

}  // namespace

double c1_constant(double K, double N, double v, double p, double s) {
  const Integrand g = make_integrand(K, N, v, p, s);
  if (g.kappa >= 0.0) return kInf;
  return g.refined_head() + numerics::integrate(g, g.xi0, v, kTol);
}

double c2_constant(double K, double N, double v, double p, double s, double t) {
  if (!(t >= 1.0) || !std::isfinite(t)) {
    throw Error(ErrorKind::kInvalidParameter, "t must be >= 1");
  }
  const Integrand g = make_integrand(K, N, v, p, s);
  if (t / (p - 1.0) * g.kappa >= 1.0) return kInf;

  // G(x) = int_x^v g, tabulated on a geometric grid over [xi0, v].
  const std::size_t n = 400;
  std::vector<double> x(n + 1), G(n + 1, 0.0);
  for (std::size_t i = 0; i <= n; ++i) {
    x[i] = g.xi0 * std::pow(v / g.xi0, static_cast<double>(i) / static_cast<double>(n));
  }
  x[n] = v;
  for (std::size_t i = n; i-- > 0;) {
    G[i] = G[i + 1] + numerics::integrate(g, x[i], x[i + 1], kTol);
  }
  auto inner = [&](double y) {
    if (y <= g.xi0) return g.head(y) + G[0];
    const auto it = std::upper_bound(x.begin(), x.end(), y);
    const auto j = std::min(static_cast<std::size_t>(it - x.begin()) - 1, n - 1);
    return G[j + 1] + numerics::integrate(g, y, x[j + 1], kTol);
  };
  auto outer = [&](double y) { return std::pow(inner(y), t); };
  double total = numerics::integrate(outer, 0.0, g.xi0, kTol);
  for (std::size_t i = 0; i < n; ++i) {
    total += numerics::integrate(outer, x[i], x[i + 1], Tolerance{1e-10, 1e-300, 40});
  }
  return std::pow(total, 1.0 / t);
}

EmbeddingConstants embedding_constants(double K, double N, double v, double p,
                                       double s, std::optional<double> t) {
  EmbeddingConstants out{K, N, v, p, s, t, 0.0, kInf};
  out.c1 = c1_constant(K, N, v, p, s);
  if (t) out.c2 = c2_constant(K, N, v, p, s, *t);
  return out;
}

EmbeddingCheck check_embedding(const poisson::RadialSolution& u,
                               const poisson::DataFunction& f, double s,
                               std::optional<double> t) {
  const WeightedInterval& space = u.space();
  const auto& tag = space.cd_tag();
  if (!tag) throw Error(ErrorKind::kInvalidParameter, "space carries no CD tag");
  const double p = u.p();
  const double v = space.cumulative(u.radius());
  const auto x = u.grid().nodes();

  double f_norm = 0.0;
  if (s == kInf) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      f_norm = std::max(f_norm, std::abs(f(x[i])));
      if (i + 1 < x.size()) f_norm = std::max(f_norm, std::abs(f(0.5 * (x[i] + x[i + 1]))));
    }
  } else {
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
      f_norm += numerics::integrate(
          [&](double r) { return std::pow(std::abs(f(r)), s) * space.density(r); }, x[i],
          x[i + 1], Tolerance{1e-12, 1e-300, 40});
    }
    f_norm = std::pow(f_norm, 1.0 / s);
  }

  EmbeddingCheck out;
  double constant = 0.0;
  if (t) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
      total += numerics::integrate(
          [&](double r) { return std::pow(std::abs(u.value(r)), *t) * space.density(r); },
          x[i], x[i + 1], Tolerance{1e-12, 1e-300, 40});
    }
    out.lhs = std::pow(total, 1.0 / *t);
    constant = c2_constant(tag->K, tag->N, v, p, s, *t);
  } else {
    out.lhs = u.sup();
    constant = c1_constant(tag->K, tag->N, v, p, s);
  }
  out.rhs = constant * std::pow(f_norm, 1.0 / (p - 1.0));
  out.slack = out.rhs - out.lhs;
  return out;
}

}  // namespace talenti::sobolev
