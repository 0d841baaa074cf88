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

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "talenti_cli/runner.hpp"
#include "talenti_cli/scenario.hpp"
#include "talenti_cli/suites.hpp"

namespace {

constexpr int kPass = 0;
constexpr int kCheckFailure = 1;
constexpr int kParseError = 2;

int report(const talenti::cli::BatchResult& result, const std::string& out_dir) {
  for (const auto& rec : result.records) {
    std::size_t failed = 0;
    for (const auto& c : rec.checks) failed += c.passed ? 0 : 1;
    std::printf("%s %-40s %zu checks, %zu failed, %.2f s\n", rec.passed() ? "PASS" : "FAIL",
                rec.scenario.name.c_str(), rec.checks.size(), failed, rec.wall_seconds);
    for (const auto& c : rec.checks) {
      if (!c.passed) {
        std::printf("     %s: measured %s limit %s %s\n", c.name.c_str(),
                    talenti::cli::format_double(c.measured).c_str(),
                    talenti::cli::format_double(c.limit).c_str(), c.detail.c_str());
      }
    }
  }
  std::printf("records in %s\n", out_dir.c_str());
  return result.all_passed ? kPass : kCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"talenti-kit: symmetrization comparison and eigenvalue checks on model spaces"};
  app.require_subcommand(1);

  std::string scenario_file;
  std::string suite_name;
  unsigned jobs = 1;
  std::string out_dir;

  auto* run = app.add_subcommand("run", "Run the scenarios of a scenario file");
  run->add_option("scenario-file", scenario_file, "Scenario file")->required();
  run->add_option("--jobs", jobs, "Scenarios run in parallel")->check(CLI::PositiveNumber);
  run->add_option("--out", out_dir, "Output directory (default talenti-out)");

  auto* suite = app.add_subcommand("suite", "Run a builtin suite");
  suite->add_option("name", suite_name, "Suite name, see 'list'")->required();
  suite->add_option("--jobs", jobs, "Scenarios run in parallel")->check(CLI::PositiveNumber);
  suite->add_option("--out", out_dir, "Output directory (default talenti-out/<name>)");

  auto* list = app.add_subcommand("list", "List the builtin suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParseError;
  }

  try {
    if (list->parsed()) {
      for (const auto& name : talenti::cli::list_builtin_suites()) std::printf("%s\n", name.c_str());
      return kPass;
    }
    const auto tol = talenti::cli::tolerance_from_env();
    if (run->parsed()) {
      if (out_dir.empty()) out_dir = "talenti-out";
      const auto scenarios = talenti::cli::load_scenario_file(scenario_file, tol);
      return report(talenti::cli::run_batch(scenarios, jobs, out_dir), out_dir);
    }
    const auto text = talenti::cli::builtin_suite_text(suite_name);
    if (!text) {
      std::fprintf(stderr, "error: unknown suite '%s'; see 'talenti-kit list'\n",
                   suite_name.c_str());
      return kParseError;
    }
    if (out_dir.empty()) out_dir = "talenti-out/" + suite_name;
    const auto scenarios = talenti::cli::parse_scenarios(*text, "suite " + suite_name, tol);
    return report(talenti::cli::run_batch(scenarios, jobs, out_dir), out_dir);
  } catch (const talenti::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.kind() == talenti::ErrorKind::kParseError ? kParseError : kCheckFailure;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kCheckFailure;
  }
}
