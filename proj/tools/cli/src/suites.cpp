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

#include "talenti_cli/suites.hpp"

#include <functional>
#include <sstream>
#include <utility>

namespace talenti::cli {

namespace {

using Builder = std::function<void(std::ostringstream&)>;

void section(std::ostringstream& out, const std::string& name, const std::string& kind,
             std::initializer_list<std::pair<const char*, std::string>> fields) {
  out << "[scenario " << name << "]\nkind = " << kind << "\n";
  for (const auto& [key, value] : fields) out << key << " = " << value << "\n";
  out << "\n";
}

std::string slug(const std::string& s) {
  std::string out;
  for (char c : s) out += (c == ' ' || c == '.') ? '_' : c;
  return out;
}

const std::vector<std::pair<std::string, Builder>>& registry() {
  static const std::vector<std::pair<std::string, Builder>> suites = {
      {"sharpness",
       [](std::ostringstream& out) {
         for (std::string N : {"3", "4"}) {
           const std::string K = N == "3" ? "2" : "3";
           for (std::string p : {"1.5", "2", "3"}) {
             for (std::string f : {"const 1", "cospos"}) {
               section(out, slug("model-N" + N + "-p" + p + "-" + f), "talenti",
                       {{"K", K}, {"N", N}, {"p", p}, {"v", "0.5"}, {"f", f}});
             }
           }
         }
       }},
      {"talenti-shifted-cap",
       [](std::ostringstream& out) {
         for (std::string a : {"0.2", "0.3"}) {
           for (std::string v : {"0.3", "0.5"}) {
             for (std::string f : {"cospos", "twolevel 2 0.5 0.6"}) {
               section(out, slug("cap-a" + a + "-v" + v + "-" + f.substr(0, 6)), "talenti",
                       {{"K", "2"}, {"N", "3"}, {"a", a}, {"p", "2"}, {"v", v}, {"f", f}});
             }
           }
         }
       }},
      {"eigen-analytic",
       [](std::ostringstream& out) {
         for (std::string N : {"3", "4", "5"}) {
           const std::string K = std::to_string(std::stoi(N) - 1);
           section(out, "model-N" + N, "eigen", {{"K", K}, {"N", N}, {"p", "2"}, {"v", "0.5"}});
         }
       }},
      {"faber-krahn",
       [](std::ostringstream& out) {
         for (std::string a : {"0", "0.2", "0.3"}) {
           for (std::string p : {"1.5", "2", "3"}) {
             section(out, slug("fk-a" + a + "-p" + p), "eigen",
                     {{"K", "2"}, {"N", "3"}, {"a", a}, {"p", p}, {"v", "0.4"}});
           }
         }
       }},
      {"chiti-holder",
       [](std::ostringstream& out) {
         for (std::string a : {"0", "0.3"}) {
           for (std::string p : {"1.5", "2", "3"}) {
             section(out, slug("holder-a" + a + "-p" + p), "holder",
                     {{"K", "2"}, {"N", "3"}, {"a", a}, {"p", p}, {"v", "0.4"}});
           }
         }
       }},
      {"rearrangement",
       [](std::ostringstream& out) {
         section(out, "model-cospos", "symmetrize",
                 {{"K", "2"}, {"N", "3"}, {"v", "0.7"}, {"f", "cospos"}, {"cells", "10000"}});
         section(out, "cap-twolevel", "symmetrize",
                 {{"K", "2"}, {"N", "3"}, {"a", "0.3"}, {"v", "0.5"},
                  {"f", "twolevel 1 3 0.8"}, {"cells", "10000"}});
         section(out, "probe-N3", "model-probe", {{"K", "2"}, {"N", "3"}});
         section(out, "probe-N4", "model-probe", {{"K", "3"}, {"N", "4"}});
       }},
      {"sobolev",
       [](std::ostringstream& out) {
         section(out, "model-sup", "sobolev", {{"K", "2"}, {"N", "3"}, {"p", "2"}, {"v", "0.5"}});
         section(out, "cap-s2-p3", "sobolev",
                 {{"K", "2"}, {"N", "3"}, {"a", "0.3"}, {"p", "3"}, {"v", "0.4"},
                  {"f", "cospos"}, {"s", "2"}, {"t", "2"}});
         section(out, "model-s1-t2", "sobolev",
                 {{"K", "2"}, {"N", "3"}, {"p", "2"}, {"v", "0.5"}, {"s", "1"}, {"t", "2"}});
         section(out, "below-threshold", "sobolev",
                 {{"K", "2"}, {"N", "3"}, {"p", "2"}, {"v", "0.5"}, {"s", "1.4"}, {"t", "1"}});
       }},
      {"stability",
       [](std::ostringstream& out) {
         section(out, "sweep-p2", "stability-sweep",
                 {{"K", "2"}, {"N", "3"}, {"p", "2"}, {"v", "0.5"}, {"Q", "2, 4"}});
       }},
  };
  return suites;
}

}  // namespace

std::vector<std::string> list_builtin_suites() {
  std::vector<std::string> names;
  for (const auto& entry : registry()) names.push_back(entry.first);
  return names;
}

std::optional<std::string> builtin_suite_text(std::string_view name) {
  for (const auto& [key, build] : registry()) {
    if (key == name) {
      std::ostringstream out;
      out << "# builtin suite " << key << "\n\n";
      build(out);
      return out.str();
    }
  }
  return std::nullopt;
}

}  // namespace talenti::cli
