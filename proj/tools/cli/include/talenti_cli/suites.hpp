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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace talenti::cli {

/// Names of the builtin suites in a fixed order.
std::vector<std::string> list_builtin_suites();

/// Scenario-file text of a builtin suite, or nullopt for an unknown name.
std::optional<std::string> builtin_suite_text(std::string_view name);

}  // namespace talenti::cli
