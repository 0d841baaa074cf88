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

#include "oracle_values.hpp"
#include "talenti/radial_poisson.hpp"
#include "talenti/talenti_check.hpp"

namespace talenti::poisson {
namespace {

using std::numbers::pi;

RadialProblem model_problem(double p, DataFunction f, double v) {
  const ModelSpace m(2.0, 3.0);
  return {m.as_weighted_interval(), p, std::move(f), m.inverse_cumulative(v), {}};
}

TEST(SolveExplicit, ClosedFormOnModelHemisphere) {
  // N = 3, p = 2, f = 1 on the half sphere: u = rho cot(rho) / 2.
  const auto problem = model_problem(2.0, DataFunction::constant(1.0), 0.5);
  EXPECT_NEAR(problem.r1, pi / 2.0, 1e-14);
  const auto u = solve_explicit(problem);
  EXPECT_NEAR(u.value(0.0), 0.5, 1e-12);
  for (double rho : {0.2, 0.8, 1.3, 1.55}) {
    EXPECT_NEAR(u.value(rho), 0.5 * rho / std::tan(rho), 1e-12) << rho;
    const double slope = (std::sin(rho) * std::cos(rho) - rho) / (2.0 * std::sin(rho) * std::sin(rho));
    EXPECT_NEAR(u.derivative(rho), slope, 1e-11) << rho;
  }
  EXPECT_EQ(u.value(2.0), 0.0);
  EXPECT_NEAR(u.sup(), 0.5, 1e-12);
  // Energy int |u'|^2 dm = int f u dm = 1/8.
  EXPECT_NEAR(gradient_norm(u, 2.0), 0.125, 1e-11);
}

TEST(SolveExplicit, MatchesOracleValues) {
  const auto p3 = solve_explicit(model_problem(3.0, DataFunction::constant(1.0), 0.5));
  EXPECT_NEAR(p3.value(0.0), oracle::kW0ModelP3, 1e-10);
  EXPECT_NEAR(gradient_norm(p3, 2.0), oracle::kEnergyModelP3R2, 1e-10);

  const auto cos_problem = model_problem(1.5, DataFunction::cospos(), 0.7);
  EXPECT_NEAR(cos_problem.r1, oracle::kR07, 1e-12);
  EXPECT_NEAR(solve_explicit(cos_problem).value(0.0), oracle::kW0ModelCosposP15, 1e-10);

  const WeightedInterval cap = comparison::make_shifted_cap(2.0, 3.0, 0.3);
  const RadialProblem cap_problem{cap, 2.0, DataFunction::constant(1.0), cap.inverse_cumulative(0.5), {}};
  EXPECT_NEAR(cap_problem.r1, oracle::kCapR05, 1e-12);
  EXPECT_NEAR(solve_explicit(cap_problem).value(0.0), oracle::kW0CapP2, 1e-10);
}

TEST(SolveExplicit, SolutionIsNonincreasingForNonnegativeData) {
  const auto u = solve_explicit(model_problem(1.5, DataFunction::two_level(2.0, 0.5, 0.6), 0.5), 513);
  const auto vals = u.values();
  for (std::size_t i = 1; i < vals.size(); ++i) EXPECT_LE(vals[i], vals[i - 1]);
  EXPECT_EQ(vals.back(), 0.0);
}

TEST(SolveExplicit, RejectsNegativeData) {
  DataFunction f;
  f.value = [](double t) { return 1.0 - 2.0 * t; };
  try {
    solve_explicit(model_problem(2.0, f, 0.5));
    FAIL() << "negative datum accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNegativeData);
  }
}

TEST(WeakResidual, SmallForExactSolutions) {
  for (double p : {1.5, 2.0, 3.0}) {
    const auto problem = model_problem(p, DataFunction::two_level(2.0, 0.5, 0.6), 0.5);
    EXPECT_LE(weak_residual(solve_explicit(problem), problem), 1e-8) << p;
  }
}

TEST(WeakResidual, DetectsWrongSolution) {
  const auto problem = model_problem(2.0, DataFunction::constant(1.0), 0.5);
  const auto right = solve_explicit(problem);
  const auto wrong_problem = model_problem(2.0, DataFunction::constant(1.3), 0.5);
  EXPECT_GE(weak_residual(right, wrong_problem), 1e-3);
}

TEST(MassForm, AgreesWithExplicitSolution) {
  for (double a : {0.0, 0.3}) {
    const WeightedInterval space = comparison::make_shifted_cap(2.0, 3.0, a);
    for (double p : {1.5, 3.0}) {
      const auto f = DataFunction::cospos();
      const RadialProblem problem{space, p, f, space.inverse_cumulative(0.5), {}};
      const auto u = solve_explicit(problem, 1025);
      const auto m = solve_mass_form(problem, load_in_mass(space, f, 0.5), 1025);
      for (double x : u.grid().nodes()) {
        EXPECT_NEAR(m.value(x), u.value(x), 1e-8 * u.sup()) << a << " " << p << " " << x;
      }
    }
  }
}

TEST(GradientIdentity, PhysicalAndMassVariablesAgree) {
  for (double a : {0.0, 0.2}) {
    const WeightedInterval space = comparison::make_shifted_cap(2.0, 3.0, a);
    for (double p : {1.5, 2.0, 3.0}) {
      const auto f = DataFunction::two_level(2.0, 0.5, 0.6);
      const RadialProblem problem{space, p, f, space.inverse_cumulative(0.4), {}};
      const auto u = solve_explicit(problem);
      const auto primitive = load_in_mass(space, f, 0.4);
      for (double r : {1.0, 0.5 * (1.0 + p), p}) {
        const double physical = gradient_norm(u, r);
        EXPECT_NEAR(gradient_norm_mass(space, p, r, 0.4, primitive), physical, 1e-8 * physical)
            << a << " " << p << " " << r;
      }
    }
  }
}

TEST(LoadInMass, IsThePrimitiveInMass) {
  const WeightedInterval space = ModelSpace(2.0, 3.0).as_weighted_interval();
  const auto load = load_in_mass(space, DataFunction::constant(2.0), 0.6);
  EXPECT_EQ(load(0.0), 0.0);
  EXPECT_NEAR(load(0.3), 0.6, 1e-13);
  EXPECT_NEAR(load(0.6), 1.2, 1e-13);
  EXPECT_THROW(load_in_mass(space, DataFunction::constant(1.0), 1.5), Error);
}

TEST(DataFunction, Factories) {
  const auto c = DataFunction::cospos();
  EXPECT_EQ(c(2.0), 0.0);
  EXPECT_NEAR(c(0.5), std::cos(0.5), 1e-16);
  EXPECT_TRUE(c.nonincreasing);
  const auto t = DataFunction::two_level(1.0, 3.0, 0.4);
  EXPECT_EQ(t(0.39), 1.0);
  EXPECT_EQ(t(0.4), 3.0);
  EXPECT_FALSE(t.nonincreasing);
  EXPECT_TRUE(t.piecewise_constant);
}

}  // namespace
}  // namespace talenti::poisson
