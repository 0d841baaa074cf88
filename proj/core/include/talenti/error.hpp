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

#include <stdexcept>
#include <string>
#include <string_view>

namespace talenti {

enum class ErrorKind {
  kInvalidParameter,
  kOutOfDomain,
  kNonConvergence,
  kDivergence,
  kNoBracket,
  kMeasureOutOfRange,
  kIntegrabilityFailure,
  kNegativeData,
  kInvalidShift,
  kInvalidMass,
  kNoCrossing,
  kParseError,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries one of the kinds above so that
// callers (the CLI in particular) can map it to an exit status or a report
// entry without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidParameter: return "InvalidParameter";
    case ErrorKind::kOutOfDomain: return "OutOfDomain";
    case ErrorKind::kNonConvergence: return "NonConvergence";
    case ErrorKind::kDivergence: return "Divergence";
    case ErrorKind::kNoBracket: return "NoBracket";
    case ErrorKind::kMeasureOutOfRange: return "MeasureOutOfRange";
    case ErrorKind::kIntegrabilityFailure: return "IntegrabilityFailure";
    case ErrorKind::kNegativeData: return "NegativeData";
    case ErrorKind::kInvalidShift: return "InvalidShift";
    case ErrorKind::kInvalidMass: return "InvalidMass";
    case ErrorKind::kNoCrossing: return "NoCrossing";
    case ErrorKind::kParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace talenti
