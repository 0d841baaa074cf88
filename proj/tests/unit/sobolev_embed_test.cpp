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

#include "oracle_values.hpp"
#include "talenti/sobolev_embed.hpp"
#include "talenti/talenti_check.hpp"

namespace talenti::sobolev {
namespace {

using numerics::kInf;

TEST(C1, ModelSupremumBound) {
  // The model solution with f = 1 attains the bound: c1 = w(0) = 1/2.
  EXPECT_NEAR(c1_constant(2.0, 3.0, 0.5, 2.0, kInf), 0.5, 1e-13);
}

TEST(C1, MatchesOracleValues) {
  EXPECT_NEAR(c1_constant(2.0, 3.0, 0.3, 3.0, kInf), oracle::kC1N3V03P3, 1e-10);
  EXPECT_NEAR(c1_constant(3.0, 4.0, 0.5, 2.0, 6.0), oracle::kC1N4V05P2S6, 1e-10);
  // With s = inf and f = 1, c1 is the model w(0).
  EXPECT_NEAR(c1_constant(2.0, 3.0, 0.5, 3.0, kInf), oracle::kW0ModelP3, 1e-10);
}

TEST(C1, FinitenessFlipsAtCriticalExponent) {
  for (double N : {3.0, 4.0}) {
    for (double p : {1.5, 2.0, 3.0}) {
      const double s0 = N / p;
      EXPECT_FALSE(is_divergent(c1_constant(N - 1.0, N, 0.5, p, s0 * (1.0 + 1e-3)))) << N << " " << p;
      EXPECT_TRUE(is_divergent(c1_constant(N - 1.0, N, 0.5, p, s0 * (1.0 - 1e-3)))) << N << " " << p;
      EXPECT_TRUE(is_divergent(c1_constant(N - 1.0, N, 0.5, p, s0))) << N << " " << p;
    }
  }
}

TEST(C1, GrowsAsSApproachesThreshold) {
  double prev = 0.0;
  for (double s : {kInf, 10.0, 4.0, 2.0, 1.6}) {
    const double c = c1_constant(2.0, 3.0, 0.5, 2.0, s);
    EXPECT_GT(c, prev) << s;
    prev = c;
  }
}

TEST(C2, MatchesOracleAndFinitenessRule) {
  EXPECT_NEAR(c2_constant(2.0, 3.0, 0.5, 2.0, kInf, 2.0), oracle::kC2N3V05P2T2, 1e-8);
  // t/(p-1) (1/s - p/N) < 1: with N = 3, p = 2, s = 1 the exponent is t/3.
  EXPECT_FALSE(is_divergent(c2_constant(2.0, 3.0, 0.5, 2.0, 1.0, 2.0)));
  EXPECT_TRUE(is_divergent(c2_constant(2.0, 3.0, 0.5, 2.0, 1.0, 3.5)));
}

TEST(Constants, RejectInvalidParameters) {
  EXPECT_THROW(c1_constant(0.0, 3.0, 0.5, 2.0, kInf), Error);
  EXPECT_THROW(c1_constant(2.0, 3.0, 1.0, 2.0, kInf), Error);
  EXPECT_THROW(c1_constant(2.0, 3.0, 0.5, 1.0, kInf), Error);
  EXPECT_THROW(c1_constant(2.0, 3.0, 0.5, 2.0, 0.0), Error);
  EXPECT_THROW(c2_constant(2.0, 3.0, 0.5, 2.0, kInf, 0.5), Error);
  const auto all = embedding_constants(2.0, 3.0, 0.5, 2.0, kInf, 2.0);
  EXPECT_NEAR(all.c1, 0.5, 1e-13);
  EXPECT_NEAR(all.c2, oracle::kC2N3V05P2T2, 1e-8);
}

TEST(Embedding, HoldsOnSolvedInstances) {
  for (double a : {0.0, 0.3}) {
    const WeightedInterval space = comparison::make_shifted_cap(2.0, 3.0, a);
    for (const auto& f : {poisson::DataFunction::constant(1.0), poisson::DataFunction::cospos()}) {
      const poisson::RadialProblem problem{space, 2.0, f, space.inverse_cumulative(0.5), {}};
      const auto u = poisson::solve_explicit(problem);
      for (double s : {kInf, 3.0}) {
        EXPECT_GE(check_embedding(u, f, s).slack, -1e-8) << a << " " << f.label << " " << s;
        EXPECT_GE(check_embedding(u, f, s, 2.0).slack, -1e-8) << a << " " << f.label << " " << s;
      }
    }
  }
  // Equality for the model with f = 1 and s = inf.
  const WeightedInterval model = ModelSpace(2.0, 3.0).as_weighted_interval();
  const auto f = poisson::DataFunction::constant(1.0);
  const auto u = poisson::solve_explicit({model, 2.0, f, model.inverse_cumulative(0.5), {}});
  EXPECT_NEAR(check_embedding(u, f, kInf).slack, 0.0, 1e-12);
}

}  // namespace
}  // namespace talenti::sobolev
