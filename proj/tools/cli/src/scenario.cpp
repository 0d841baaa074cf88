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

#include "talenti_cli/scenario.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace talenti::cli {

namespace {

[[noreturn]] void fail(const std::string& message) {
  throw Error(ErrorKind::kParseError, message);
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ',' || s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ',' && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<double> to_number(std::string_view s) {
  s = trim(s);
  if (s == "inf" || s == "infinity") return numerics::kInf;
  double x = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, x);
  if (ec != std::errc() || ptr != end || std::isnan(x)) return std::nullopt;
  return x;
}

struct Context {
  const std::string& origin;
  std::size_t line;
  std::string where(std::string_view field) const {
    return origin + ":" + std::to_string(line) + ": field '" + std::string(field) + "'";
  }
};

double number(const Context& ctx, std::string_view field, std::string_view value) {
  const auto x = to_number(value);
  if (!x) fail(ctx.where(field) + ": '" + std::string(value) + "' is not a number");
  return *x;
}

std::vector<double> number_list(const Context& ctx, std::string_view field,
                                std::string_view value) {
  std::vector<double> out;
  for (auto item : split_list(value)) out.push_back(number(ctx, field, item));
  if (out.empty()) fail(ctx.where(field) + ": empty list");
  return out;
}

std::size_t count(const Context& ctx, std::string_view field, std::string_view value) {
  const double x = number(ctx, field, value);
  if (!(x >= 1.0) || x != std::floor(x) || x > 1e8) {
    fail(ctx.where(field) + ": expected a positive integer");
  }
  return static_cast<std::size_t>(x);
}

std::vector<Cell> read_cells(const Context& ctx, const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ctx.where("cells_file") + ": cannot open '" + path + "'");
  std::vector<Cell> cells;
  std::string raw;
  std::size_t row = 0;
  while (std::getline(in, raw)) {
    ++row;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto items = split_list(line);
    const auto m = items.size() == 2 ? to_number(items[0]) : std::nullopt;
    const auto u = items.size() == 2 ? to_number(items[1]) : std::nullopt;
    if (!m || !u || !(*m >= 0.0) || !std::isfinite(*m) || !std::isfinite(*u)) {
      fail(ctx.where("cells_file") + ": " + path + ":" + std::to_string(row) +
           ": expected 'measure value' with measure >= 0");
    }
    cells.push_back(Cell{*m, *u});
  }
  if (cells.empty()) fail(ctx.where("cells_file") + ": no cells in '" + path + "'");
  double total = 0.0;
  for (const auto& c : cells) total += c.measure;
  if (!(total > 0.0 && total < 1.0)) {
    fail(ctx.where("cells_file") + ": total measure must lie in (0, 1)");
  }
  return cells;
}

Kind parse_kind(const Context& ctx, std::string_view value) {
  static const std::pair<std::string_view, Kind> kinds[] = {
      {"model-probe", Kind::kModelProbe}, {"symmetrize", Kind::kSymmetrize},
      {"poisson", Kind::kPoisson},        {"talenti", Kind::kTalenti},
      {"eigen", Kind::kEigen},            {"holder", Kind::kHolder},
      {"sobolev", Kind::kSobolev},        {"stability-sweep", Kind::kStabilitySweep},
  };
  for (const auto& [name, kind] : kinds) {
    if (name == value) return kind;
  }
  fail(ctx.where("kind") + ": unknown kind '" + std::string(value) + "'");
}

// Range checks run once the whole section is read, so they see final values.
// Errors cite the line that set the field, or the section header for
// defaults.
void validate(Scenario& sc, const std::string& origin, std::size_t header,
              const std::map<std::string, std::size_t>& key_lines) {
  auto bad = [&](std::string_view field, const std::string& why) {
    const auto it = key_lines.find(std::string(field));
    const std::size_t line = it == key_lines.end() ? header : it->second;
    fail(origin + ":" + std::to_string(line) + ": scenario '" + sc.name + "' field '" +
         std::string(field) + "': " + why);
  };
  if (!(sc.K > 0.0) || !std::isfinite(sc.K)) bad("K", "must be > 0");
  if (!(sc.N > 1.0) || !std::isfinite(sc.N)) bad("N", "must be > 1");
  if (!(sc.p > 1.0) || !std::isfinite(sc.p)) bad("p", "must be > 1");
  if (!(sc.v > 0.0 && sc.v < 1.0)) bad("v", "must lie in (0, 1)");
  const double half = 0.5 * std::numbers::pi * std::sqrt((sc.N - 1.0) / sc.K);
  if (!(sc.a >= 0.0 && sc.a < half)) bad("a", "must lie in [0, L/2)");
  if (!(sc.s > 0.0)) bad("s", "must be > 0");
  if (sc.t && (!(*sc.t >= 1.0) || !std::isfinite(*sc.t))) bad("t", "must be >= 1");
  if (sc.nodes < 16) bad("nodes", "must be >= 16");
  if (sc.cells < 2) bad("cells", "must be >= 2");
  try {
    (void)parse_f_spec(sc.f_spec);
  } catch (const Error& e) {
    const std::string what = e.what();
    bad("f", what.substr(what.find(": ") + 2));
  }

  if (sc.r_list.empty()) sc.r_list = {1.0, 0.5 * (1.0 + sc.p), sc.p};
  for (double r : sc.r_list) {
    if (!(r >= 1.0 && r <= sc.p)) bad("r_list", "entries must lie in [1, p]");
  }
  const double r = sc.p - 1.0;
  if (sc.t_grid.empty()) sc.t_grid = {r, 2.0 * r, 5.0 * r};
  for (double t : sc.t_grid) {
    if (!(t >= r) || !std::isfinite(t)) bad("t_grid", "entries must be >= p - 1");
  }
  if (sc.Q.empty()) sc.Q = {sc.p, 2.0 * sc.p};
  for (double q : sc.Q) {
    if (!(q > r) || !std::isfinite(q)) bad("Q", "entries must be > p - 1");
  }
  if (sc.a_list.empty()) {
    for (int i = 1; i <= 10; ++i) sc.a_list.push_back(0.05 * i);
  }
  for (double a : sc.a_list) {
    if (!(a >= 0.0 && a < half)) bad("a_list", "entries must lie in [0, L/2)");
  }
  for (std::size_t i = 1; i < sc.a_list.size(); ++i) {
    if (!(sc.a_list[i] > sc.a_list[i - 1])) bad("a_list", "must be increasing");
  }
  if (sc.kind == Kind::kStabilitySweep && sc.a_list.size() < 2) {
    bad("a_list", "needs at least two shifts");
  }
  if (!(sc.tol.abs >= 0.0)) bad("tol.abs", "must be >= 0");
  if (!(sc.tol.rel >= 0.0)) bad("tol.rel", "must be >= 0");
  if (!(sc.tol.band >= 0.0)) bad("tol.band", "must be >= 0");
}

}  // namespace

std::string_view to_string(Kind kind) {
  switch (kind) {
    case Kind::kModelProbe: return "model-probe";
    case Kind::kSymmetrize: return "symmetrize";
    case Kind::kPoisson: return "poisson";
    case Kind::kTalenti: return "talenti";
    case Kind::kEigen: return "eigen";
    case Kind::kHolder: return "holder";
    case Kind::kSobolev: return "sobolev";
    case Kind::kStabilitySweep: return "stability-sweep";
  }
  return "unknown";
}

TolerancePack parse_tolerance_pack(std::string_view text, TolerancePack base) {
  std::size_t i = 0;
  while (i <= text.size()) {
    auto j = text.find(';', i);
    if (j == std::string_view::npos) j = text.size();
    const auto item = trim(text.substr(i, j - i));
    i = j + 1;
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      fail("tolerance pack: '" + std::string(item) + "' is not key=value");
    }
    const auto key = trim(item.substr(0, eq));
    const auto x = to_number(item.substr(eq + 1));
    if (!x || !(*x >= 0.0) || !std::isfinite(*x)) {
      fail("tolerance pack: field '" + std::string(key) + "' needs a finite value >= 0");
    }
    if (key == "abs") {
      base.abs = *x;
    } else if (key == "rel") {
      base.rel = *x;
    } else if (key == "band") {
      base.band = *x;
    } else {
      fail("tolerance pack: unknown field '" + std::string(key) + "'");
    }
  }
  return base;
}

TolerancePack tolerance_from_env() {
  const char* text = std::getenv("TALENTI_SEED_TOL");
  if (text == nullptr) return {};
  return parse_tolerance_pack(text, {});
}

poisson::DataFunction parse_f_spec(std::string_view text) {
  const auto words = split_list(trim(text));
  auto arg = [&](std::size_t i) {
    const auto x = to_number(words[i]);
    if (!x || !std::isfinite(*x)) {
      fail("f-spec '" + std::string(text) + "': argument " + std::to_string(i) +
           " is not a finite number");
    }
    return *x;
  };
  if (words.size() == 2 && words[0] == "const") {
    const double c = arg(1);
    if (c < 0.0) fail("f-spec: const needs c >= 0");
    return poisson::DataFunction::constant(c);
  }
  if (words.size() == 1 && words[0] == "cospos") return poisson::DataFunction::cospos();
  if (words.size() == 4 && words[0] == "twolevel") {
    const double h1 = arg(1);
    const double h2 = arg(2);
    const double split = arg(3);
    if (h1 < 0.0 || h2 < 0.0 || !(split > 0.0)) {
      fail("f-spec: twolevel needs h1, h2 >= 0 and split > 0");
    }
    return poisson::DataFunction::two_level(h1, h2, split);
  }
  fail("f-spec '" + std::string(text) +
       "': expected 'const c', 'cospos' or 'twolevel h1 h2 split'");
}

std::vector<Scenario> parse_scenarios(std::string_view text, const std::string& origin,
                                      const TolerancePack& defaults,
                                      const std::string& base_dir) {
  std::vector<Scenario> out;
  std::vector<std::size_t> header_lines;
  std::set<std::string> names;
  std::map<std::string, std::size_t> key_lines;
  bool has_kind = false;
  std::size_t line_no = 0;

  auto close = [&]() {
    if (out.empty()) return;
    if (!has_kind) {
      fail(origin + ":" + std::to_string(header_lines.back()) + ": scenario '" +
           out.back().name + "' field 'kind': missing");
    }
    validate(out.back(), origin, header_lines.back(), key_lines);
  };

  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const Context ctx{origin, line_no};
    if (line.front() == '[') {
      if (line.back() != ']') fail(origin + ":" + std::to_string(line_no) + ": unclosed '['");
      const auto inner = trim(line.substr(1, line.size() - 2));
      if (inner.substr(0, 9) != "scenario " && inner.substr(0, 9) != "scenario\t") {
        fail(origin + ":" + std::to_string(line_no) + ": expected '[scenario <name>]'");
      }
      const std::string name(trim(inner.substr(9)));
      if (name.empty() || name.find_first_of("/\\ ") != std::string::npos) {
        fail(ctx.where("name") + ": needs a non-empty name without blanks or slashes");
      }
      if (!names.insert(name).second) fail(ctx.where("name") + ": duplicate '" + name + "'");
      close();
      out.emplace_back();
      out.back().name = name;
      out.back().tol = defaults;
      header_lines.push_back(line_no);
      key_lines.clear();
      has_kind = false;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      fail(origin + ":" + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const auto value = trim(line.substr(eq + 1));
    if (out.empty()) fail(ctx.where(key) + ": appears before any [scenario] header");
    if (!key_lines.emplace(key, line_no).second) fail(ctx.where(key) + ": set twice");
    if (value.empty()) fail(ctx.where(key) + ": empty value");
    Scenario& sc = out.back();
    sc.echo.emplace_back(key, std::string(value));

    if (key == "kind") {
      sc.kind = parse_kind(ctx, value);
      has_kind = true;
    } else if (key == "K") {
      sc.K = number(ctx, key, value);
    } else if (key == "N") {
      sc.N = number(ctx, key, value);
    } else if (key == "p") {
      sc.p = number(ctx, key, value);
    } else if (key == "v") {
      sc.v = number(ctx, key, value);
    } else if (key == "a") {
      sc.a = number(ctx, key, value);
    } else if (key == "f") {
      sc.f_spec = std::string(value);
    } else if (key == "r_list") {
      sc.r_list = number_list(ctx, key, value);
    } else if (key == "t_grid") {
      sc.t_grid = number_list(ctx, key, value);
    } else if (key == "Q") {
      sc.Q = number_list(ctx, key, value);
    } else if (key == "a_list") {
      sc.a_list = number_list(ctx, key, value);
    } else if (key == "s") {
      sc.s = number(ctx, key, value);
    } else if (key == "t") {
      sc.t = number(ctx, key, value);
    } else if (key == "nodes") {
      sc.nodes = count(ctx, key, value);
    } else if (key == "cells") {
      sc.cells = count(ctx, key, value);
    } else if (key == "cells_file") {
      std::filesystem::path path{std::string(value)};
      if (path.is_relative()) path = std::filesystem::path(base_dir) / path;
      sc.cells_file = path.string();
      sc.atoms = read_cells(ctx, path.string());
    } else if (key == "tol.abs" || key == "tol.rel" || key == "tol.band") {
      sc.tol = parse_tolerance_pack(key.substr(4) + "=" + std::string(value), sc.tol);
    } else {
      fail(ctx.where(key) + ": unknown field");
    }
  }
  close();
  if (out.empty()) fail(origin + ": no [scenario] sections");
  return out;
}

std::vector<Scenario> load_scenario_file(const std::string& path,
                                         const TolerancePack& defaults) {
  std::ifstream in(path);
  if (!in) fail(path + ": cannot open scenario file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const auto parent = std::filesystem::path(path).parent_path();
  return parse_scenarios(buffer.str(), path, defaults,
                         parent.empty() ? std::string(".") : parent.string());
}

}  // namespace talenti::cli
