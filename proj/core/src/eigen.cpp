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

#include "talenti/eigen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace talenti::eigen {

using numerics::Grid;
using numerics::Tolerance;
using poisson::RadialSolution;

namespace {

// |x|^{e-1} x, the odd power.
double odd_power(double x, double e) { return std::copysign(std::pow(std::abs(x), e), x); }

// (z, m, int |z'|^p dm, int |z|^p dm) with m = w |z'|^{p-2} z'.
using State = std::array<double, 4>;

class Shooter {
 public:
  Shooter(const WeightedInterval& space, double p, double lambda,
          const ShootingOptions& options)
      : space_(space), p_(p), lambda_(lambda), options_(options) {}

  double slope(double t, double m) const {
    return odd_power(m / space_.density(t), 1.0 / (p_ - 1.0));
  }

  State rhs(double t, const State& y) const {
    const double w = space_.density(t);
    const double zp = odd_power(y[1] / w, 1.0 / (p_ - 1.0));
    const double az = std::abs(y[0]);
    return {zp, -lambda_ * w * odd_power(y[0], p_ - 1.0),
            std::pow(std::abs(zp), p_) * w, std::pow(az, p_) * w};
  }

  /// Series start at t = eps: z' ~ -(lambda W / w)^{1/(p-1)} with W / w
  /// linear in t.
  State start(double eps) const {
    const double W = space_.cumulative(eps);
    const double w = space_.density(eps);
    const double q = 1.0 / (p_ - 1.0);
    const double z = 1.0 - eps * std::pow(lambda_ * W / w, q) / (q + 1.0);
    return {z, -lambda_ * W * z, 0.0, W};
  }

  /// Advances (t, y) to t_end. With stop_at_zero, returns false as soon as
  /// an accepted step ends with z <= 0.
  bool advance(double& t, State& y, double t_end, double& h, bool stop_at_zero) const {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                            a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
    const double span = t_end;
    std::size_t steps = 0;
    while (t < t_end) {
      if (++steps > 2000000) {
        throw Error(ErrorKind::kNonConvergence, "shooting exceeded the step budget");
      }
      bool last = false;
      double step = h;
      if (t + step >= t_end) {
        step = t_end - t;
        last = true;
      }
      auto add = [&](std::initializer_list<std::pair<double, const State*>> terms) {
        State out = y;
        for (const auto& [coef, k] : terms) {
          for (std::size_t i = 0; i < 4; ++i) out[i] += step * coef * (*k)[i];
        }
        return out;
      };
      const State k1 = rhs(t, y);
      const State k2 = rhs(t + c2 * step, add({{a21, &k1}}));
      const State k3 = rhs(t + c3 * step, add({{a31, &k1}, {a32, &k2}}));
      const State k4 = rhs(t + c4 * step, add({{a41, &k1}, {a42, &k2}, {a43, &k3}}));
      const State k5 = rhs(t + c5 * step,
                           add({{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
      const double t6 = last ? t_end : t + step;
      const State k6 = rhs(
          t6, add({{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
      const State y5 =
          add({{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
      const State k7 = rhs(t6, y5);
      double err = 0.0;
      for (std::size_t i = 0; i < 4; ++i) {
        const double e = step * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                 e6 * k6[i] + e7 * k7[i]);
        const double sc =
            options_.abs + options_.rel * std::max(std::abs(y[i]), std::abs(y5[i]));
        err += (e / sc) * (e / sc);
      }
      err = std::sqrt(err / 4.0);
      if (!std::isfinite(err)) err = 1e10;
      if (err <= 1.0) {
        t = last ? t_end : t + step;
        y = y5;
        const double grow = err == 0.0 ? 5.0 : std::min(5.0, 0.9 * std::pow(err, -0.2));
        if (!last) h = step * std::max(grow, 0.2);
        if (stop_at_zero && y[0] <= 0.0) return false;
      } else {
        h = step * std::max(0.2, 0.9 * std::pow(err, -0.2));
        if (h < 1e-15 * span) {
          throw Error(ErrorKind::kNonConvergence, "shooting step size underflow");
        }
      }
    }
    return true;
  }

  /// True when z stays positive on [eps, rv].
  bool stays_positive(double eps, double rv) const {
    State y = start(eps);
    if (y[0] <= 0.0) return false;
    double t = eps;
    double h = eps;
    return advance(t, y, rv, h, true);
  }

 private:
  const WeightedInterval& space_;
  double p_;
  double lambda_;
  ShootingOptions options_;
};

void check_mass(const WeightedInterval& space, double v) {
  if (!(v > 0.0) || !(v < space.total_mass())) {
    throw Error(ErrorKind::kInvalidMass,
                "mass v = " + std::to_string(v) + " outside (0, total)");
  }
}

void check_p(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw Error(ErrorKind::kInvalidParameter, "p must be > 1");
  }
}

}  // namespace

EigenPair first_eigenpair(const WeightedInterval& space, double v, double p,
                          const ShootingOptions& options) {
  check_p(p);
  check_mass(space, v);
  if (options.nodes < 3) {
    throw Error(ErrorKind::kInvalidParameter, "eigenfunction grid needs >= 3 nodes");
  }
  const double rv = space.inverse_cumulative(v);
  const double eps = 1e-6 * rv;
  auto positive = [&](double lambda) {
    return Shooter(space, p, lambda, options).stays_positive(eps, rv);
  };

  // Expand a geometric bracket from lambda = 1, then bisect.
  double lo = 1.0;
  double hi = 1.0;
  if (positive(1.0)) {
    for (int k = 0; positive(hi); ++k) {
      if (k > 200) throw Error(ErrorKind::kNonConvergence, "no upper eigenvalue bracket");
      lo = hi;
      hi *= 2.0;
    }
  } else {
    for (int k = 0; !positive(lo); ++k) {
      if (k > 200) throw Error(ErrorKind::kNonConvergence, "no lower eigenvalue bracket");
      hi = lo;
      lo *= 0.5;
    }
  }
  while (hi - lo > options.lambda_rel * hi) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (positive(mid) ? lo : hi) = mid;
  }
  const double lambda = 0.5 * (lo + hi);

  // Final pass recording the profile on a cosine grid.
  std::vector<double> nodes{0.0, eps};
  const Grid base = Grid::cosine(rv, options.nodes);
  for (const double x : base.nodes()) {
    if (x > eps * (1.0 + 1e-9)) nodes.push_back(x);
  }
  nodes.back() = rv;
  const Shooter shooter(space, p, lambda, options);
  State y = shooter.start(eps);
  std::vector<double> values{1.0, y[0]};
  std::vector<double> slopes{0.0, shooter.slope(eps, y[1])};
  double t = eps;
  double h = eps;
  for (std::size_t i = 2; i < nodes.size(); ++i) {
    shooter.advance(t, y, nodes[i], h, false);
    values.push_back(y[0]);
    slopes.push_back(shooter.slope(nodes[i], y[1]));
  }
  values.back() = 0.0;
  EigenPair pair{lambda,
                 p,
                 v,
                 RadialSolution(Grid(std::move(nodes)), std::move(values),
                                std::move(slopes), p, space),
                 "z(0) = 1",
                 y[2] / y[3]};
  return pair;
}

double fe_rayleigh_eigenvalue(const WeightedInterval& space, double v, double p,
                              std::size_t cells) {
  check_p(p);
  check_mass(space, v);
  if (cells < 4) throw Error(ErrorKind::kInvalidParameter, "FE oracle needs >= 4 cells");
  const double rv = space.inverse_cumulative(v);
  const std::size_t n = cells;
  const double h = rv / static_cast<double>(n);
  std::vector<double> x(n + 1);
  for (std::size_t i = 0; i <= n; ++i) x[i] = rv * static_cast<double>(i) / static_cast<double>(n);
  x[n] = rv;
  std::vector<double> c(n), mass(n + 1, 0.0);
  const Tolerance tol{1e-12, 1e-300, 40};
  for (std::size_t e = 0; e < n; ++e) {
    c[e] = space.cumulative(x[e + 1]) - space.cumulative(x[e]);
    const double right = numerics::integrate(
        [&](double s) { return space.density(s) * (s - x[e]) / h; }, x[e], x[e + 1], tol);
    mass[e] += c[e] - right;
    mass[e + 1] += right;
  }
  std::vector<double> u(n + 1), slope(n);
  for (std::size_t i = 0; i <= n; ++i) u[i] = 1.0 - (x[i] / rv) * (x[i] / rv);
  const double q = 1.0 / (p - 1.0);
  double previous = 0.0;
  double rayleigh = 0.0;
  for (int iter = 0; iter < 5000; ++iter) {
    // Discrete p-Poisson solve with right-hand side mass * u^{p-1}: the
    // element fluxes follow by summation from the natural end.
    double flux = 0.0;
    for (std::size_t e = 0; e < n; ++e) {
      flux -= mass[e] * odd_power(u[e], p - 1.0);
      slope[e] = odd_power(flux * h / c[e], q);
    }
    u[n] = 0.0;
    for (std::size_t i = n; i-- > 0;) u[i] = u[i + 1] - slope[i] * h;
    const double top = u[0];
    double num = 0.0;
    double den = 0.0;
    for (std::size_t e = 0; e < n; ++e) {
      slope[e] /= top;
      num += c[e] * std::pow(std::abs(slope[e]), p);
    }
    for (std::size_t i = 0; i <= n; ++i) {
      u[i] /= top;
      den += mass[i] * std::pow(std::abs(u[i]), p);
    }
    rayleigh = num / den;
    if (iter > 2 && std::abs(rayleigh - previous) <= 1e-13 * rayleigh) return rayleigh;
    previous = rayleigh;
  }
  throw Error(ErrorKind::kNonConvergence, "FE inverse iteration did not settle");
}

double alpha_from_lambda(const ModelSpace& model, double p, double lambda_target,
                         double v_upper, double rel) {
  check_p(p);
  const WeightedInterval& space = model.as_weighted_interval();
  check_mass(space, v_upper);
  if (!(lambda_target > 0.0) || !(rel > 0.0)) {
    throw Error(ErrorKind::kInvalidParameter, "alpha search needs lambda > 0");
  }
  auto lambda_at = [&](double alpha) { return first_eigenpair(space, alpha, p).lambda; };
  const double lambda_upper = lambda_at(v_upper);
  if (std::abs(lambda_target - lambda_upper) <= rel * lambda_target) return v_upper;
  if (lambda_target < lambda_upper) {
    throw Error(ErrorKind::kNoBracket,
                "target eigenvalue " + std::to_string(lambda_target) +
                    " lies below the model value " + std::to_string(lambda_upper));
  }
  double lo = 0.5 * v_upper;
  double lambda_lo = lambda_at(lo);
  for (int k = 0; lambda_lo <= lambda_target; ++k) {
    if (k > 60 || lambda_lo <= lambda_upper) {
      throw Error(ErrorKind::kNonConvergence,
                  "model eigenvalue does not decrease in the mass");
    }
    lo *= 0.5;
    lambda_lo = lambda_at(lo);
  }
  return numerics::find_root(
      [&](double alpha) { return lambda_at(alpha) - lambda_target; }, lo, v_upper,
      Tolerance{1e-14, 1e-2 * rel * lambda_target, 60});
}

FaberKrahn faber_krahn_check(const WeightedInterval& space, double v, double p) {
  const auto& tag = space.cd_tag();
  if (!tag) throw Error(ErrorKind::kInvalidParameter, "space carries no CD tag");
  const ModelSpace model(tag->K, tag->N);
  FaberKrahn out;
  out.lambda_instance = first_eigenpair(space, v, p).lambda;
  out.lambda_model = first_eigenpair(model.as_weighted_interval(), v, p).lambda;
  out.margin = out.lambda_instance - out.lambda_model;
  return out;
}

EigenPair model_partner(const EigenPair& instance, const ModelSpace& model) {
  const double alpha = alpha_from_lambda(model, instance.p, instance.lambda, instance.v);
  return first_eigenpair(model.as_weighted_interval(), alpha, instance.p);
}

double power_integral(const RadialSolution& u, double t) {
  const auto x = u.grid().nodes();
  const WeightedInterval& space = u.space();
  auto g = [&](double s) { return std::pow(std::abs(u.value(s)), t) * space.density(s); };
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    total += numerics::integrate(g, x[i], x[i + 1], Tolerance{1e-12, 1e-300, 40});
  }
  return total;
}

double matching_scale(const EigenPair& u, const EigenPair& z, double r) {
  if (!(r > 0.0)) throw Error(ErrorKind::kInvalidParameter, "norm exponent must be > 0");
  return std::pow(power_integral(u.z, r) / power_integral(z.z, r), 1.0 / r);
}

ChitiReport chiti_compare(const EigenPair& u, const EigenPair& z, double r,
                          double band) {
  ChitiReport report;
  report.scale = matching_scale(u, z, r);
  const WeightedInterval& instance = u.z.space();
  const WeightedInterval& model = z.z.space();
  const auto x = z.z.grid().nodes();
  const auto zv = z.z.values();
  std::vector<double> d(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double s = std::min(model.cumulative(x[i]), u.v);
    const double ustar = u.z.value(instance.inverse_cumulative(s));
    d[i] = ustar - report.scale * zv[i];
  }
  int sign = 0;
  std::size_t last_signed = 0;
  bool crossed = false;
  bool any_signed = false;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (std::abs(d[i]) <= band) continue;
    const int s = d[i] > 0.0 ? 1 : -1;
    any_signed = true;
    if (sign != 0 && s != sign) {
      ++report.sign_changes;
      if (!crossed) {
        const std::size_t a = last_signed;
        const double frac = d[a] / (d[a] - d[i]);
        report.crossing = x[a] + frac * (x[i] - x[a]);
        crossed = true;
      }
    }
    sign = s;
    last_signed = i;
  }
  if (!any_signed) {
    report.degenerate = true;
    report.crossing = z.radius();
    for (const double di : d) report.max_violation = std::max(report.max_violation, std::abs(di));
    return report;
  }
  if (!crossed) {
    throw Error(ErrorKind::kNoCrossing,
                "u* - c z keeps one sign on [0, r_alpha]");
  }
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double violation = x[i] < report.crossing ? d[i] : -d[i];
    report.max_violation = std::max(report.max_violation, violation);
  }
  return report;
}

HolderReport reverse_holder(const EigenPair& u, const EigenPair& z, double r,
                            std::span<const double> t_grid) {
  if (!(r > 0.0)) throw Error(ErrorKind::kInvalidParameter, "base exponent must be > 0");
  HolderReport report;
  report.r = r;
  report.t_grid.assign(t_grid.begin(), t_grid.end());
  const double c = matching_scale(u, z, r);
  const double base_u = std::pow(power_integral(u.z, r), 1.0 / r);
  const double base_z = c * std::pow(power_integral(z.z, r), 1.0 / r);
  for (const double t : t_grid) {
    if (!(t >= r)) throw Error(ErrorKind::kInvalidParameter, "exponents must be >= r");
    report.ratios_instance[t] = std::pow(power_integral(u.z, t), 1.0 / t) / base_u;
    report.ratios_model[t] = c * std::pow(power_integral(z.z, t), 1.0 / t) / base_z;
  }
  return report;
}

double stability_deficit(const EigenPair& u, const EigenPair& z, double p,
                         std::span<const double> Q) {
  check_p(p);
  const double c = matching_scale(u, z, p - 1.0);
  double delta = 0.0;
  for (const double t : Q) {
    if (!(t > p - 1.0)) {
      throw Error(ErrorKind::kInvalidParameter, "deficit exponents must exceed p - 1");
    }
    const double nu = std::pow(power_integral(u.z, t), 1.0 / t);
    const double nz = c * std::pow(power_integral(z.z, t), 1.0 / t);
    const double d = p >= 2.0 ? std::pow(nz, p - 1.0) - std::pow(nu, p - 1.0)
                              : std::pow(std::max(nz - nu, 0.0), p - 1.0);
    delta = std::max(delta, d);
  }
  return delta;
}

SlopeIdentity eigen_slope_identity(const EigenPair& pair, const ModelSpace& model,
                                   std::size_t samples) {
  const RadialSolution& u = pair.z;
  const WeightedInterval& space = u.space();
  const double p = pair.p;
  const auto x = u.grid().nodes();
  auto g = [&](double s) { return std::pow(std::abs(u.value(s)), p - 1.0) * space.density(s); };
  const Tolerance tol{1e-12, 1e-300, 40};
  std::vector<double> prefix(x.size(), 0.0);
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    prefix[i + 1] = prefix[i] + numerics::integrate(g, x[i], x[i + 1], tol);
  }
  SlopeIdentity out;
  out.max_excess = -numerics::kInf;
  for (std::size_t k = 1; k <= samples; ++k) {
    const double s = pair.v * static_cast<double>(k) / static_cast<double>(samples + 1);
    const double rho = space.inverse_cumulative(s);
    const std::size_t j = u.grid().locate(rho);
    const double G = prefix[j] + numerics::integrate(g, x[j], rho, tol);
    const double lhs = -u.derivative(rho) / space.density(rho);
    const double rhs = std::pow(pair.lambda * G, 1.0 / (p - 1.0)) *
                       std::pow(model.isoperimetric_profile(s), -p / (p - 1.0));
    out.max_excess = std::max(out.max_excess, (lhs - rhs) / rhs);
    out.max_relative_gap = std::max(out.max_relative_gap, std::abs(lhs - rhs) / rhs);
  }
  return out;
}

}  // namespace talenti::eigen
