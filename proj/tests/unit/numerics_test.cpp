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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "talenti/numerics.hpp"

namespace talenti::numerics {
namespace {

using std::numbers::pi;

ErrorKind kind_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no talenti::Error raised";
  return ErrorKind::kParseError;
}

TEST(Integrate, SmoothIntegrands) {
  EXPECT_NEAR(integrate([](double x) { return std::sin(x); }, 0.0, pi), 2.0, 1e-13);
  EXPECT_NEAR(integrate([](double x) { return std::exp(x); }, 0.0, 1.0), std::exp(1.0) - 1.0,
              1e-13);
  EXPECT_EQ(integrate([](double) { return 1.0; }, 2.0, 2.0), 0.0);
}

TEST(Integrate, IntegrableEndpointSingularities) {
  const Tolerance tol{1e-10, 1e-300, 60};
  EXPECT_NEAR(integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, tol), 2.0, 1e-9);
  EXPECT_NEAR(integrate([](double x) { return std::log(x); }, 0.0, 1.0, tol), -1.0, 1e-9);
  // Near a nonzero endpoint the integrand can only be sampled down to the
  // spacing of doubles there, which bounds the attainable accuracy.
  EXPECT_NEAR(integrate([](double x) { return std::pow(1.0 - x, -0.25); }, 0.0, 1.0, tol),
              4.0 / 3.0, 1e-8);
  EXPECT_NEAR(integrate([](double x) { return std::pow(x, -0.75); }, 0.0, 1.0, tol), 4.0, 1e-8);
  // Slowly decaying chain: x^{-0.9} sheds 7% per bisection.
  EXPECT_NEAR(integrate([](double x) { return std::pow(x, -0.9); }, 0.0, 1.0, tol), 10.0, 1e-6);
}

TEST(Integrate, NonIntegrableSingularityIsDivergence) {
  EXPECT_EQ(kind_of([] { integrate([](double x) { return 1.0 / x; }, 0.0, 1.0); }),
            ErrorKind::kDivergence);
  EXPECT_EQ(kind_of([] { integrate([](double x) { return std::pow(x, -1.5); }, 0.0, 1.0); }),
            ErrorKind::kDivergence);
}

TEST(Integrate, RejectsBadArguments) {
  EXPECT_EQ(kind_of([] { integrate([](double) { return 1.0; }, 1.0, 0.0); }),
            ErrorKind::kInvalidParameter);
  EXPECT_EQ(kind_of([] { integrate([](double) { return 1.0; }, 0.0, 1.0, Tolerance{0.0, 1.0, 5}); }),
            ErrorKind::kInvalidParameter);
}

TEST(FindRoot, FixedPointOfCosine) {
  const double x = find_root([](double t) { return std::cos(t) - t; }, 0.0, 1.0, Tolerance::tight());
  EXPECT_NEAR(x, 0.73908513321516067, 1e-15);
}

TEST(FindRoot, RequiresSignChange) {
  EXPECT_EQ(kind_of([] { find_root([](double t) { return t * t + 1.0; }, -1.0, 1.0); }),
            ErrorKind::kNoBracket);
}

TEST(Grid, CosineGridEndpointsAndOrder) {
  const Grid g = Grid::cosine(2.0, 33);
  EXPECT_EQ(g[0], 0.0);
  EXPECT_EQ(g.length(), 2.0);
  for (std::size_t i = 1; i < g.size(); ++i) EXPECT_LT(g[i - 1], g[i]);
  EXPECT_NEAR(g[16], 1.0, 1e-15);
}

TEST(Grid, BreakpointsAreInsertedOrSnapped) {
  const Grid g = Grid::uniform(1.0, 5);
  const double cuts[] = {0.3, 0.5 + 1e-14, 1.0};
  const Grid h = g.with_breakpoints(cuts);
  ASSERT_EQ(h.size(), 6u);
  EXPECT_EQ(h[2], 0.3);
  EXPECT_EQ(h[3], 0.5 + 1e-14);
  EXPECT_EQ(h.locate(0.3), 2u);
  EXPECT_EQ(h.locate(7.0), h.size() - 2);
}

TEST(StepFunction, ContinuityConventions) {
  const StepFunction right({0.0, 1.0, 2.0}, {3.0, 1.0}, Continuity::kRight);
  EXPECT_EQ(right(0.0), 3.0);
  EXPECT_EQ(right(1.0), 1.0);
  EXPECT_EQ(right(2.5), 0.0);
  const StepFunction left({0.0, 1.0, 2.0}, {3.0, 1.0}, Continuity::kLeft);
  EXPECT_EQ(left(0.0), 3.0);
  EXPECT_EQ(left(1.0), 3.0);
  EXPECT_EQ(left(2.0), 1.0);
  EXPECT_DOUBLE_EQ(left.integral_to(1.5), 3.5);
  EXPECT_TRUE(left.is_nonincreasing());
}

TEST(StepFunction, GeneralizedInverseOfDistribution) {
  // m = 1 on [0, 1), 0.3 on [1, 2), 0 beyond.
  const StepFunction m({0.0, 1.0, 2.0}, {1.0, 0.3}, Continuity::kRight);
  EXPECT_EQ(generalized_inverse(m, 0.0), 2.0);
  EXPECT_EQ(generalized_inverse(m, 0.2), 2.0);
  EXPECT_EQ(generalized_inverse(m, 0.3), 2.0);
  EXPECT_EQ(generalized_inverse(m, 0.5), 1.0);
  EXPECT_EQ(generalized_inverse(m, 1.0), 1.0);
}

TEST(MonotoneCubic, StaysMonotoneOnMonotoneData) {
  std::mt19937 rng(20260101);
  std::uniform_real_distribution<double> step(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> x{0.0};
    std::vector<double> y{0.0};
    for (int i = 0; i < 20; ++i) {
      x.push_back(x.back() + 0.01 + step(rng));
      y.push_back(y.back() + (step(rng) < 0.3 ? 0.0 : step(rng)));
    }
    const MonotoneCubic c(x, y);
    double prev = c(0.0);
    for (double t = 0.0; t <= x.back(); t += x.back() / 997.0) {
      const double now = c(t);
      ASSERT_GE(now, prev - 1e-12) << "trial " << trial << " t " << t;
      prev = now;
    }
  }
}

TEST(MonotoneCubic, DerivativeIsSmoothForNearlyEqualValues) {
  // Values agree to 1e-12 on a micro cell. The derivative must be a clean
  // polynomial in x, so tight quadrature of it converges and reproduces the
  // value difference.
  const double h = 1.5e-6;
  const double y1 = 1.0 - 0.5 * h * h;
  const MonotoneCubic c({0.0, h}, {1.0, y1}, {0.0, -h});
  const Tolerance tol{1e-11, 1e-300, 50};
  const double total = integrate([&](double x) { return c.derivative(x); }, 0.0, h, tol);
  EXPECT_NEAR(total, y1 - 1.0, 1e-11 * std::abs(y1 - 1.0));
  EXPECT_NO_THROW(integrate([&](double x) { return c.derivative(x) * x * x; }, 0.0, h, tol));
  for (double t : {0.1 * h, 0.5 * h, 0.9 * h}) {
    EXPECT_NEAR(c(t), 1.0 - 0.5 * t * t, 2.3e-16);
    EXPECT_NEAR(c.derivative(t), -t, 1e-3 * t);
  }
}

}  // namespace
}  // namespace talenti::numerics
