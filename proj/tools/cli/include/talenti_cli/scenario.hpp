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

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "talenti/radial_poisson.hpp"
#include "talenti/rearrangement.hpp"

// Scenario files: line-oriented `key = value` pairs grouped in sections
//
//   [scenario cap-talenti]
//   kind = talenti
//   K = 2
//   N = 3
//   a = 0.3
//   ...
//
// Blank lines and lines starting with '#' are ignored. Lists are separated
// by commas or blanks. Every problem is reported as ErrorKind::kParseError
// with the file, line and offending field in the message.
namespace talenti::cli {

enum class Kind {
  kModelProbe,
  kSymmetrize,
  kPoisson,
  kTalenti,
  kEigen,
  kHolder,
  kSobolev,
  kStabilitySweep,
};

std::string_view to_string(Kind kind);

/// Thresholds applied by the checks of a run.
struct TolerancePack {
  /// Allowance on inequalities that hold exactly in theory.
  double abs = 1e-8;
  /// Relative allowance on identities between two numerical evaluations.
  double rel = 1e-6;
  /// Half-width of the tie band in crossing detection.
  double band = 1e-6;
};

/// Defaults overridden by TALENTI_SEED_TOL, e.g. "abs=1e-7;rel=1e-5".
/// Throws kParseError on unknown keys or malformed numbers.
TolerancePack tolerance_from_env();
TolerancePack parse_tolerance_pack(std::string_view text, TolerancePack base);

/// Parses `const c`, `cospos` or `twolevel h1 h2 split`.
poisson::DataFunction parse_f_spec(std::string_view text);

struct Scenario {
  std::string name;
  Kind kind = Kind::kModelProbe;
  double K = 2.0;
  double N = 3.0;
  double p = 2.0;
  double v = 0.5;
  double a = 0.0;
  std::string f_spec = "const 1";
  std::vector<double> r_list;
  std::vector<double> t_grid;
  std::vector<double> Q;
  std::vector<double> a_list;
  double s = numerics::kInf;
  std::optional<double> t;
  std::size_t nodes = 4096;
  std::size_t cells = 1 << 14;
  /// Two-column (measure, value) file for symmetrize; relative paths are
  /// resolved against the scenario file.
  std::string cells_file;
  /// Contents of cells_file, read at parse time.
  std::vector<Cell> atoms;
  TolerancePack tol;
  /// Keys exactly as written, for the record echo.
  std::vector<std::pair<std::string, std::string>> echo;
};

/// `origin` names the source in error messages; `base_dir` resolves
/// relative paths. Validates parameter ranges before returning.
std::vector<Scenario> parse_scenarios(std::string_view text, const std::string& origin,
                                      const TolerancePack& defaults,
                                      const std::string& base_dir = ".");

std::vector<Scenario> load_scenario_file(const std::string& path,
                                         const TolerancePack& defaults);

}  // namespace talenti::cli
