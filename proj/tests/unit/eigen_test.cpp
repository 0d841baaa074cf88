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
#include <vector>

#include "oracle_values.hpp"
#include "talenti/eigen.hpp"
#include "talenti/talenti_check.hpp"

namespace talenti::eigen {
namespace {

WeightedInterval cap(double a) { return comparison::make_shifted_cap(2.0, 3.0, a); }

TEST(FirstEigenpair, CosineOnModelHemispheres) {
  // z = cos solves z'' + (N - 1) cot(t) z' = -N z with z(pi/2) = 0.
  for (double N : {3.0, 4.0, 5.0}) {
    const ModelSpace model(N - 1.0, N);
    const auto pair = first_eigenpair(model.as_weighted_interval(), 0.5, 2.0);
    EXPECT_NEAR(pair.lambda, N, 1e-8 * N) << N;
    EXPECT_NEAR(pair.rayleigh, pair.lambda, 1e-7 * N) << N;
    for (double t : {0.0, 0.4, 1.0, 1.5}) EXPECT_NEAR(pair.z.value(t), std::cos(t), 1e-8) << N;
  }
}

TEST(FirstEigenpair, MatchesOracleValues) {
  const ModelSpace model(2.0, 3.0);
  const auto m = first_eigenpair(model.as_weighted_interval(), 0.4, 3.0);
  EXPECT_NEAR(m.lambda, oracle::kLambdaModelN3P3V04, 1e-7 * m.lambda);
  const auto c15 = first_eigenpair(cap(0.3), 0.4, 1.5);
  EXPECT_NEAR(c15.lambda, oracle::kLambdaCapP15V04, 1e-7 * c15.lambda);
  const auto c20 = first_eigenpair(cap(0.3), 0.4, 2.0);
  EXPECT_NEAR(c20.lambda, oracle::kLambdaCapP20V04, 1e-7 * c20.lambda);
}

TEST(FirstEigenpair, RejectsBadMass) {
  try {
    first_eigenpair(cap(0.2), 1.0, 2.0);
    FAIL() << "v = 1 accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInvalidMass);
  }
}

TEST(FeOracle, AgreesWithShootingAtSecondOrder) {
  // The mass matrix is lumped, so the discrete quotient is no upper bound;
  // its error still falls fourfold per halving of the cell width.
  for (double p : {1.5, 2.0, 3.0}) {
    const double lambda = first_eigenpair(cap(0.2), 0.4, p).lambda;
    const double coarse = fe_rayleigh_eigenvalue(cap(0.2), 0.4, p, 512) - lambda;
    const double fine = fe_rayleigh_eigenvalue(cap(0.2), 0.4, p, 2048) - lambda;
    EXPECT_LE(std::abs(fine), 1e-4 * lambda) << p;
    EXPECT_NEAR(coarse / fine, 16.0, 1.0) << p;
  }
}

TEST(FaberKrahn, ModelMinimizes) {
  for (double p : {1.5, 2.0, 3.0}) {
    const auto fk = faber_krahn_check(cap(0.3), 0.4, p);
    EXPECT_GT(fk.margin, 0.0) << p;
    const auto eq = faber_krahn_check(cap(0.0), 0.4, p);
    EXPECT_NEAR(eq.margin, 0.0, 1e-6 * eq.lambda_model) << p;
  }
}

TEST(FaberKrahn, EigenvalueDecreasesWithMass) {
  const ModelSpace model(2.0, 3.0);
  double prev = numerics::kInf;
  for (double v : {0.1, 0.3, 0.5, 0.7}) {
    const double lambda = first_eigenpair(model.as_weighted_interval(), v, 2.0).lambda;
    EXPECT_LT(lambda, prev) << v;
    prev = lambda;
  }
  const double alpha = alpha_from_lambda(model, 2.0, 3.0, 0.9);
  EXPECT_NEAR(alpha, 0.5, 1e-9);
}

TEST(Chiti, SingleCrossingOnShiftedCap) {
  const ModelSpace model(2.0, 3.0);
  for (double p : {1.5, 2.0, 3.0}) {
    const auto u = first_eigenpair(cap(0.3), 0.4, p);
    const auto z = model_partner(u, model);
    EXPECT_NEAR(z.lambda, u.lambda, 1e-9 * u.lambda);
    EXPECT_LE(z.v, 0.4);
    const auto rep = chiti_compare(u, z, p - 1.0);
    EXPECT_FALSE(rep.degenerate) << p;
    EXPECT_EQ(rep.sign_changes, 1u) << p;
    EXPECT_GT(rep.crossing, 0.0) << p;
    EXPECT_LT(rep.crossing, z.radius()) << p;
    EXPECT_LE(rep.max_violation, 1e-6) << p;
  }
}

TEST(Chiti, DegenerateOnTheModel) {
  const ModelSpace model(2.0, 3.0);
  const auto u = first_eigenpair(model.as_weighted_interval(), 0.4, 2.0);
  const auto z = model_partner(u, model);
  EXPECT_TRUE(chiti_compare(u, z, 1.0).degenerate);
}

TEST(ReverseHolder, ModelRatioDominates) {
  const ModelSpace model(2.0, 3.0);
  for (double a : {0.0, 0.3}) {
    for (double p : {1.5, 3.0}) {
      const auto u = first_eigenpair(cap(a), 0.4, p);
      const auto z = model_partner(u, model);
      const double r = p - 1.0;
      const std::vector<double> t_grid = {r, 2.0 * r, 5.0 * r};
      const auto rep = reverse_holder(u, z, r, t_grid);
      for (double t : t_grid) {
        const double ri = rep.ratios_instance.at(t);
        const double rm = rep.ratios_model.at(t);
        EXPECT_LE(ri, rm + 1e-8) << a << " " << p << " " << t;
        if (a == 0.0) {
          EXPECT_NEAR(ri, rm, 1e-8) << p << " " << t;
        }
      }
      EXPECT_NEAR(rep.ratios_instance.at(r), 1.0, 1e-12);
    }
  }
}

TEST(StabilityDeficit, VanishesOnModelAndGrowsWithShift) {
  const ModelSpace model(2.0, 3.0);
  const std::vector<double> Q = {2.0, 4.0};
  double prev = -1.0;
  for (double a : {0.0, 0.1, 0.3, 0.5}) {
    const auto u = first_eigenpair(cap(a), 0.5, 2.0);
    const auto z = model_partner(u, model);
    const double delta = stability_deficit(u, z, 2.0, Q);
    if (a == 0.0) {
      EXPECT_NEAR(delta, 0.0, 1e-9);
    }
    EXPECT_GT(delta, prev) << a;
    prev = delta;
  }
}

TEST(SlopeIdentity, HoldsOnTheModel) {
  const ModelSpace model(2.0, 3.0);
  for (double p : {1.5, 2.0, 3.0}) {
    const auto pair = first_eigenpair(model.as_weighted_interval(), 0.4, p);
    const auto id = eigen_slope_identity(pair, model);
    EXPECT_LE(id.max_relative_gap, 1e-5) << p;
  }
}

}  // namespace
}  // namespace talenti::eigen
