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

#include <filesystem>
#include <string>
#include <vector>

#include "talenti_cli/scenario.hpp"

namespace talenti::cli {

inline constexpr const char* kKernelVersion = "talenti-kit 1.0.0";

/// One named check. `slack` is the signed distance to the threshold, so a
/// check passes exactly when slack >= 0.
struct Check {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double limit = 0.0;
  double slack = 0.0;
  std::string detail;
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

struct RunRecord {
  Scenario scenario;
  std::vector<Check> checks;
  Table table;
  double wall_seconds = 0.0;
  std::string version = kKernelVersion;

  bool passed() const;
};

/// 17 significant digits, so values round-trip.
std::string format_double(double x);

std::string render_csv(const Table& table);
std::string render_record(const RunRecord& record);

/// Runs one scenario. Library errors raised while computing become a
/// failed "execution" check rather than an exception.
RunRecord run_scenario(const Scenario& scenario);

struct BatchResult {
  std::vector<RunRecord> records;
  bool all_passed = false;
};

/// Runs the scenarios on up to `jobs` threads. Each scenario writes
/// <name>.csv and <name>.record into `out_dir`; summary.record is written
/// after all of them finish.
BatchResult run_batch(const std::vector<Scenario>& scenarios, unsigned jobs,
                      const std::filesystem::path& out_dir);

/// Spearman rank correlation with average ranks for ties.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace talenti::cli
