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

// Reference values produced by tests/oracles/derive_oracles.py (closed-form
// model mass, mpmath quadrature at 30 digits, scipy DOP853 shooting) and
// frozen here. Model spaces have K = N - 1; the shifted cap has K = 2, N = 3.
namespace talenti::oracle {

inline constexpr double kModelNormalizationN3 = 1.5707963267948966;
inline constexpr double kModelNormalizationN4 = 1.3333333333333333;
inline constexpr double kModelNormalizationN5 = 1.1780972450961725;
inline constexpr double kH3AtQuarterPi = 0.090845056908104664;
inline constexpr double kH3InverseOf03 = 1.2453924332741538;
inline constexpr double kH4At1 = 0.13420542191164357;
inline constexpr double kProfile4At03 = 0.66745022757600107;
inline constexpr double kW0ModelP3 = 0.82259935271709813;
inline constexpr double kEnergyModelP3R2 = 0.23354413860682882;
inline constexpr double kR07 = 1.8962002203156395;
inline constexpr double kW0ModelCosposP15 = 0.12617761318785775;
inline constexpr double kCapR05 = 1.2752160463985565;
inline constexpr double kW0CapP2 = 0.45977586517088228;
inline constexpr double kC1N3V03P3 = 0.56156959860011899;
inline constexpr double kC1N4V05P2S6 = 0.59096039769079991;
inline constexpr double kC2N3V05P2T2 = 0.20076946774351459;
inline constexpr double kLambdaModelN3P3V04 = 5.4215333860932722;
inline constexpr double kLambdaCapP15V04 = 3.075105353875577;
inline constexpr double kLambdaCapP20V04 = 4.1252406292174033;

}  // namespace talenti::oracle
