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

#include "talenti/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <queue>
#include <string>

namespace talenti::numerics {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::string show(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string show_interval(double a, double b) { return "[" + show(a) + ", " + show(b) + "]"; }

// Kronrod 15-point abscissae/weights with the embedded 7-point Gauss rule.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double error = 0.0;
  int depth = 0;
  bool at_lo = false;
  bool at_hi = false;

  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gauss_kronrod(const RealFunction& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += kWgk[j] * sum;
    if (j % 2 == 1) gauss += kWg[j / 2] * sum;
  }
  Panel p;
  p.a = a;
  p.b = b;
  p.value = kronrod * half;
  p.error = std::abs((kronrod - gauss) * half);
  if (!std::isfinite(p.value)) {
    throw Error(ErrorKind::kNonConvergence, "non-finite integrand on " + show_interval(a, b));
  }
  return p;
}

// Contributions shed by repeatedly bisecting the panel that touches one
// endpoint. For a power-law singularity they form a geometric sequence.
class EndpointChain {
 public:
  void push(double contribution, double running_sum, const Tolerance& tol) {
    contributions_.push_back(contribution);
    constexpr std::size_t kWindow = 40;
    const bool growing =
        std::abs(contribution) > tol.rel * std::abs(running_sum);
    const bool flat =
        contributions_.size() >= 2 &&
        contribution * previous() > 0.0 &&
        std::abs(contribution) >= (1.0 - 1e-3) * std::abs(previous());
    streak_ = (growing && flat) ? streak_ + 1 : 0;
    if (streak_ >= kWindow) {
      throw Error(ErrorKind::kDivergence,
                  "endpoint contributions do not decay; integral is infinite");
    }
  }

  // Closed-form sum of the remaining geometric tail, with an error estimate
  // from the drift of the ratio. Empty when the sequence is not geometric.
  bool tail(double& value, double& error) const {
    const std::size_t n = contributions_.size();
    if (n < 3) return false;
    const double c2 = contributions_[n - 1];
    const double c1 = contributions_[n - 2];
    const double c0 = contributions_[n - 3];
    if (c0 == 0.0 || c1 == 0.0) return false;
    const double q = c2 / c1;
    const double q_prev = c1 / c0;
    if (!(q > 0.0 && q < 1.0) || std::abs(q - q_prev) > 1e-3 * q) return false;
    value = c2 * q / (1.0 - q);
    error = std::abs(value - c2 * q_prev / (1.0 - q_prev)) +
            4.0 * kEps * std::abs(value);
    return true;
  }

 private:
  double previous() const { return contributions_[contributions_.size() - 2]; }

  std::vector<double> contributions_;
  std::size_t streak_ = 0;
};

}  // namespace

void Tolerance::validate() const {
  if (!(rel >= 8.0 * kEps) || !(abs > 0.0) || max_subdivisions <= 0) {
    throw Error(ErrorKind::kInvalidParameter,
                "tolerance requires rel >= 8 eps, abs > 0, max_subdivisions > 0");
  }
}

Tolerance Tolerance::tight() { return Tolerance{8.0 * kEps, 1e-300, 60}; }

Grid::Grid(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.size() < 2 || nodes_.front() != 0.0) {
    throw Error(ErrorKind::kInvalidParameter,
                "grid needs at least two nodes starting at 0");
  }
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    if (!(nodes_[i] > nodes_[i - 1])) {
      throw Error(ErrorKind::kInvalidParameter,
                  "grid nodes must be strictly increasing");
    }
  }
}

Grid Grid::uniform(double length, std::size_t count) {
  if (!(length > 0.0) || count < 2) {
    throw Error(ErrorKind::kInvalidParameter, "uniform grid needs L > 0, n >= 2");
  }
  std::vector<double> x(count);
  for (std::size_t i = 0; i < count; ++i) {
    x[i] = length * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  x.front() = 0.0;
  x.back() = length;
  return Grid(std::move(x));
}

Grid Grid::cosine(double length, std::size_t count) {
  if (!(length > 0.0) || count < 2) {
    throw Error(ErrorKind::kInvalidParameter, "cosine grid needs L > 0, n >= 2");
  }
  std::vector<double> x(count);
  const double step = std::numbers::pi / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    // 1 - cos(theta) = 2 sin^2(theta / 2) keeps the first nodes accurate.
    const double s = std::sin(0.5 * step * static_cast<double>(i));
    x[i] = length * s * s;
  }
  x.front() = 0.0;
  x.back() = length;
  return Grid(std::move(x));
}

Grid Grid::with_breakpoints(std::span<const double> breakpoints) const {
  std::vector<double> x = nodes_;
  const double length = x.back();
  for (double bp : breakpoints) {
    if (!(bp > 0.0 && bp < length)) continue;
    auto it = std::lower_bound(x.begin(), x.end(), bp);
    const double snap = 1e-12 * length;
    if (std::abs(*it - bp) < snap) {
      if (it != x.begin() && it + 1 != x.end()) *it = bp;
      continue;
    }
    if (it != x.begin() && std::abs(*(it - 1) - bp) < snap) {
      if (it - 1 != x.begin()) *(it - 1) = bp;
      continue;
    }
    x.insert(it, bp);
  }
  return Grid(std::move(x));
}

double Grid::max_spacing() const {
  double h = 0.0;
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    h = std::max(h, nodes_[i] - nodes_[i - 1]);
  }
  return h;
}

std::size_t Grid::locate(double x) const {
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
  if (it == nodes_.begin()) return 0;
  const auto i = static_cast<std::size_t>(it - nodes_.begin()) - 1;
  return std::min(i, nodes_.size() - 2);
}

double integrate(const RealFunction& f, double a, double b,
                 const Tolerance& tol) {
  tol.validate();
  if (!(a <= b) || !std::isfinite(a) || !std::isfinite(b)) {
    throw Error(ErrorKind::kInvalidParameter, "integrate needs finite a <= b");
  }
  if (a == b) return 0.0;

  auto target = [&tol](double value) {
    return std::max(tol.abs, tol.rel * std::abs(value));
  };

  Panel root = gauss_kronrod(f, a, b);
  if (root.error <= target(root.value)) return root.value;
  root.at_lo = true;
  root.at_hi = true;

  std::priority_queue<Panel> queue;
  queue.push(root);
  double total = root.value;
  double error = root.error;
  EndpointChain lo_chain;
  EndpointChain hi_chain;
  const int max_bisections = 400 * tol.max_subdivisions;
  int bisections = 0;

  while (!queue.empty() && error > target(total)) {
    Panel p = queue.top();
    queue.pop();
    const double mid = 0.5 * (p.a + p.b);
    // Endpoint panels stop earlier: their outer nodes must stay off a
    // possibly singular endpoint.
    const double floor = (p.at_lo || p.at_hi ? 1024.0 : 64.0) * kEps * std::abs(mid);
    const bool splittable = p.depth < tol.max_subdivisions && mid > p.a &&
                            mid < p.b && (p.b - p.a) > floor;
    if (!splittable) {
      // The panel is left as is; an endpoint panel is replaced by the
      // closed-form geometric tail of its chain when one is available.
      double tail = 0.0;
      double tail_error = 0.0;
      const EndpointChain* chain =
          p.at_lo && !p.at_hi ? &lo_chain : (p.at_hi && !p.at_lo ? &hi_chain : nullptr);
      if (chain != nullptr && chain->tail(tail, tail_error)) {
        total += tail - p.value;
        error += tail_error - p.error;
      }
      continue;
    }
    Panel left = gauss_kronrod(f, p.a, mid);
    Panel right = gauss_kronrod(f, mid, p.b);
    left.depth = right.depth = p.depth + 1;
    left.at_lo = p.at_lo;
    right.at_hi = p.at_hi;
    total += left.value + right.value - p.value;
    error += left.error + right.error - p.error;
    error = std::max(error, 0.0);
    if (p.at_lo && !p.at_hi) lo_chain.push(right.value, total, tol);
    if (p.at_hi && !p.at_lo) hi_chain.push(left.value, total, tol);
    queue.push(left);
    queue.push(right);
    if (++bisections > max_bisections) break;
  }

  if (error > target(total)) {
    throw Error(ErrorKind::kNonConvergence, "quadrature error " + show(error) +
                                               " above target " + show(target(total)) +
                                               " on " + show_interval(a, b));
  }
  return total;
}

double find_root(const RealFunction& g, double lo, double hi,
                 const Tolerance& tol) {
  tol.validate();
  if (lo > hi) std::swap(lo, hi);
  double a = lo;
  double b = hi;
  double fa = g(a);
  double fb = g(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (fa * fb > 0.0 || std::isnan(fa) || std::isnan(fb)) {
    throw Error(ErrorKind::kNoBracket,
                "g(lo) and g(hi) have the same sign on [" + std::to_string(lo) +
                    ", " + std::to_string(hi) + "]");
  }
  double c = b;
  double fc = fb;
  double d = b - a;
  double e = d;
  for (int iter = 0; iter < 300; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 =
        2.0 * kEps * std::abs(b) + 0.5 * (tol.rel * std::abs(b) + tol.abs);
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || std::abs(fb) <= tol.abs || fb == 0.0) {
      return std::clamp(b, lo, hi);
    }
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      // Inverse quadratic interpolation, or secant when only two points.
      double p;
      double q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qa = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
      const double min2 = std::abs(e * q);
      if (2.0 * p < std::min(min1, min2)) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += std::abs(d) > tol1 ? d : (xm > 0.0 ? tol1 : -tol1);
    fb = g(b);
  }
  // Plain bisection on whatever bracket is left.
  double x0 = std::min(b, c);
  double x1 = std::max(b, c);
  double f0 = g(x0);
  for (int iter = 0; iter < 400; ++iter) {
    const double mid = 0.5 * (x0 + x1);
    if (mid <= x0 || mid >= x1) break;
    const double fm = g(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (f0 > 0.0)) {
      x0 = mid;
      f0 = fm;
    } else {
      x1 = mid;
    }
    if (x1 - x0 <= tol.rel * std::abs(mid) + tol.abs) break;
  }
  return std::clamp(0.5 * (x0 + x1), lo, hi);
}

StepFunction::StepFunction(std::vector<double> breaks, std::vector<double> values,
                           Continuity continuity, double tail)
    : breaks_(std::move(breaks)),
      values_(std::move(values)),
      continuity_(continuity),
      tail_(tail) {
  if (breaks_.empty() || breaks_.size() != values_.size() + 1) {
    throw Error(ErrorKind::kInvalidParameter,
                "step function needs one more break than values");
  }
  prefix_.assign(breaks_.size(), 0.0);
  for (std::size_t j = 0; j < values_.size(); ++j) {
    if (!(breaks_[j + 1] > breaks_[j])) {
      throw Error(ErrorKind::kInvalidParameter,
                  "step function breaks must be strictly increasing");
    }
    prefix_[j + 1] = prefix_[j] + values_[j] * (breaks_[j + 1] - breaks_[j]);
  }
}

double StepFunction::operator()(double x) const {
  if (values_.empty()) return tail_;
  if (x < breaks_.front()) return values_.front();
  if (x > breaks_.back()) return tail_;
  if (continuity_ == Continuity::kRight) {
    const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
    const auto j = static_cast<std::size_t>(it - breaks_.begin()) - 1;
    return j < values_.size() ? values_[j] : tail_;
  }
  const auto it = std::lower_bound(breaks_.begin(), breaks_.end(), x);
  const auto j = static_cast<std::size_t>(std::max<std::ptrdiff_t>(
      it - breaks_.begin() - 1, 0));
  return values_[std::min(j, values_.size() - 1)];
}

double StepFunction::integral_to(double x) const {
  if (x <= breaks_.front()) return 0.0;
  if (x >= breaks_.back()) return prefix_.back() + (x - breaks_.back()) * tail_;
  const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
  const auto j = static_cast<std::size_t>(it - breaks_.begin()) - 1;
  return prefix_[j] + (x - breaks_[j]) * values_[j];
}

bool StepFunction::is_nonincreasing() const {
  for (std::size_t j = 1; j < values_.size(); ++j) {
    if (values_[j] > values_[j - 1]) return false;
  }
  return values_.empty() || tail_ <= values_.back();
}

double generalized_inverse(const StepFunction& m, double s) {
  if (!(s >= 0.0)) {
    throw Error(ErrorKind::kOutOfDomain, "generalized inverse needs s >= 0");
  }
  const auto values = m.values();
  const auto breaks = m.breaks();
  // s = 0 selects the essential supremum level: the first t with m(t) <= 0.
  const auto below = [s](double value) {
    return s > 0.0 ? value < s : value <= 0.0;
  };
  const auto it = std::partition_point(
      values.begin(), values.end(), [&](double value) { return !below(value); });
  if (it != values.end()) {
    return breaks[static_cast<std::size_t>(it - values.begin())];
  }
  return below(m.tail()) ? breaks.back() : kInf;
}

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n) {
    throw Error(ErrorKind::kInvalidParameter, "interpolant needs >= 2 points");
  }
  std::vector<double> delta(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    delta[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
  }
  d_.assign(n, 0.0);
  d_.front() = delta.front();
  d_.back() = delta.back();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (delta[i - 1] * delta[i] <= 0.0) continue;
    // Weighted harmonic mean (Fritsch–Butland), which never overshoots.
    const double h0 = x_[i] - x_[i - 1];
    const double h1 = x_[i + 1] - x_[i];
    const double w0 = 2.0 * h1 + h0;
    const double w1 = h1 + 2.0 * h0;
    d_[i] = (w0 + w1) / (w0 / delta[i - 1] + w1 / delta[i]);
  }
}

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y,
                             std::vector<double> slopes)
    : x_(std::move(x)), y_(std::move(y)), d_(std::move(slopes)) {
  if (x_.size() < 2 || y_.size() != x_.size() || d_.size() != x_.size()) {
    throw Error(ErrorKind::kInvalidParameter,
                "Hermite interpolant needs matching x, y, slopes");
  }
}

double MonotoneCubic::operator()(double x) const {
  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::size_t i = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
  i = std::min(i, x_.size() - 2);
  const double h = x_[i + 1] - x_[i];
  const double t = (x - x_[i]) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  // Written on the difference y1 - y0, which stays accurate when the two
  // values nearly agree.
  return y_[i] + (3 * t2 - 2 * t3) * (y_[i + 1] - y_[i]) +
         h * ((t3 - 2 * t2 + t) * d_[i] + (t3 - t2) * d_[i + 1]);
}

double MonotoneCubic::derivative(double x) const {
  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::size_t i = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
  i = std::min(i, x_.size() - 2);
  const double h = x_[i + 1] - x_[i];
  const double t = (x - x_[i]) / h;
  const double t2 = t * t;
  return 6 * t * (1 - t) * ((y_[i + 1] - y_[i]) / h) + (3 * t2 - 4 * t + 1) * d_[i] +
         (3 * t2 - 2 * t) * d_[i + 1];
}

}  // namespace talenti::numerics
