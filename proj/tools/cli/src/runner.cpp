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

#include "talenti_cli/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <thread>

#include "talenti/eigen.hpp"
#include "talenti/sobolev_embed.hpp"
#include "talenti/talenti_check.hpp"

namespace talenti::cli {

using numerics::kInf;

namespace {

Check at_most(std::string name, double measured, double limit, std::string detail = {}) {
  Check c{std::move(name), false, measured, limit, limit - measured, std::move(detail)};
  c.passed = c.slack >= 0.0;
  return c;
}

Check at_least(std::string name, double measured, double limit, std::string detail = {}) {
  Check c{std::move(name), false, measured, limit, measured - limit, std::move(detail)};
  c.passed = c.slack >= 0.0;
  return c;
}

std::string label(std::string_view prefix, double x) {
  return std::string(prefix) + "=" + format_double(x);
}

double rel_gap(double x, double y) {
  return std::abs(x - y) / std::max(std::abs(y), 1e-300);
}

struct Outcome {
  std::vector<Check> checks;
  Table table;
};

Outcome model_probe(const Scenario& sc) {
  const ModelSpace model(sc.K, sc.N);
  Outcome out;
  out.table.header = {"v", "radius", "profile"};
  double roundtrip = 0.0;
  double symmetry = 0.0;
  for (int i = 1; i < 20; ++i) {
    const double v = 0.05 * i;
    const double r = model.inverse_cumulative(v);
    const double I = model.isoperimetric_profile(v);
    roundtrip = std::max(roundtrip, std::abs(model.cumulative(r) - v));
    symmetry = std::max(symmetry, rel_gap(model.isoperimetric_profile(1.0 - v), I));
    out.table.rows.push_back({v, r, I});
  }
  const double total = model.cumulative(model.length());
  out.checks.push_back(at_most("total-mass", std::abs(total - 1.0), sc.tol.rel));
  out.checks.push_back(at_most("inverse-roundtrip", roundtrip, sc.tol.rel));
  out.checks.push_back(at_most("profile-symmetry", symmetry, sc.tol.rel));
  const double defect =
      model.as_weighted_interval().cd_defect(CdTag{sc.K, sc.N});
  out.checks.push_back(at_most("cd-defect", defect, sc.tol.abs));
  // Small-mass behaviour I(v) ~ N gamma2^{1/N} v^{(N-1)/N}.
  const double v0 = 1e-9;
  const double lead = sc.N * std::pow(model.constants().gamma2, 1.0 / sc.N) *
                      std::pow(v0, (sc.N - 1.0) / sc.N);
  out.checks.push_back(at_most("profile-asymptotic",
                               rel_gap(model.isoperimetric_profile(v0), lead), 1e-3));
  return out;
}

Outcome symmetrize(const Scenario& sc) {
  const ModelSpace model(sc.K, sc.N);
  const auto f = parse_f_spec(sc.f_spec);
  const bool atomic = !sc.atoms.empty();
  const WeightedInterval space = comparison::make_shifted_cap(sc.K, sc.N, sc.a);
  const double r_v = space.inverse_cumulative(sc.v);
  const SampledFunction u =
      atomic ? SampledFunction(sc.atoms, Sampling::kAtomic)
             : SampledFunction::from_grid(space, numerics::Grid::uniform(r_v, sc.cells + 1), f);
  const auto mu = rearrangement::distribution(u);
  const auto sharp = rearrangement::decreasing_rearrangement(u);
  const auto star = rearrangement::schwarz_symmetrize(u, model);
  const double top = rearrangement::lp_norm(u, kInf);

  Outcome out;
  constexpr double kExact = 1e-12;

  // Equimeasurability at thresholds between levels and at the levels.
  std::vector<double> levels;
  for (int k = 0; k < 25; ++k) levels.push_back(top * (k + 0.5) / 25.0);
  const auto cells = u.cells();
  for (int k = 0; k < 25; ++k) {
    levels.push_back(std::abs(cells[cells.size() * k / 25].value));
  }
  double eq_sharp = 0.0;
  double eq_star = 0.0;
  for (double t : levels) {
    double direct = 0.0;
    for (const auto& c : cells) {
      if (std::abs(c.value) > t) direct += c.measure;
    }
    double sharp_set = 0.0;
    const auto b = sharp.breaks();
    const auto vals = sharp.values();
    for (std::size_t j = 0; j < vals.size(); ++j) {
      if (vals[j] > t) sharp_set += b[j + 1] - b[j];
    }
    double lo = 0.0;
    double hi = star.radius();
    if (star(0.0) <= t) {
      hi = 0.0;
    } else {
      for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (star(mid) > t ? lo : hi) = mid;
      }
    }
    eq_sharp = std::max({eq_sharp, std::abs(mu(t) - direct), std::abs(sharp_set - direct)});
    eq_star = std::max(eq_star, std::abs(model.cumulative(hi) - direct));
  }
  out.checks.push_back(at_most("equimeasurable-sharp", eq_sharp, kExact));
  out.checks.push_back(at_most("equimeasurable-star", eq_star, kExact));

  for (double p : {1.0, 1.5, 2.0, 3.0, kInf}) {
    const double base = rearrangement::lp_norm(u, p);
    out.checks.push_back(
        at_most(label("norm-sharp p", p), rel_gap(rearrangement::lp_norm(sharp, p), base), kExact));
    out.checks.push_back(
        at_most(label("norm-star p", p), rel_gap(rearrangement::lp_norm(star, p), base), kExact));
    if (!atomic) {
      double continuum = 0.0;
      if (p == kInf) {
        const std::size_t n = 4 * sc.cells;
        for (std::size_t i = 0; i <= n; ++i) {
          continuum = std::max(continuum, std::abs(f(r_v * static_cast<double>(i) / n)));
        }
      } else {
        auto grid = numerics::Grid::uniform(r_v, 65).with_breakpoints(f.breakpoints);
        for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
          continuum += numerics::integrate(
              [&](double r) { return std::pow(std::abs(f(r)), p) * space.density(r); },
              grid[i], grid[i + 1], numerics::Tolerance{1e-12, 1e-300, 40});
        }
        continuum = std::pow(continuum, 1.0 / p);
      }
      out.checks.push_back(at_most(label("norm-continuum p", p), rel_gap(base, continuum), 1e-3));
    }
  }

  out.checks.push_back(at_least("sharp-nonincreasing", sharp.is_nonincreasing() ? 1.0 : 0.0, 1.0));
  const double scale3 = std::max(1.0, top * top * top);
  out.checks.push_back(at_most(
      "monotone-compose cube",
      rearrangement::monotone_compose_check(u, [](double x) { return x * x * x; }),
      kExact * scale3));
  const double q = sc.p - 1.0;
  out.checks.push_back(at_most(
      "monotone-compose power",
      rearrangement::monotone_compose_check(u, [q](double x) { return std::pow(x, q); }),
      kExact * std::max(1.0, std::pow(top, q))));

  std::vector<std::size_t> all(cells.size());
  std::iota(all.begin(), all.end(), 0);
  std::vector<std::size_t> thirds;
  for (std::size_t i = 0; i < cells.size(); i += 3) thirds.push_back(i);
  std::vector<std::size_t> back_half(all.begin() + all.size() / 2, all.end());
  // Equality on the whole domain needs u >= 0; signed data only satisfy the
  // inequality there.
  const bool nonnegative =
      std::all_of(cells.begin(), cells.end(), [](const Cell& c) { return c.value >= 0.0; });
  if (nonnegative) {
    const auto full = rearrangement::hardy_littlewood_check(u, all);
    out.checks.push_back(at_most("hardy-littlewood-equality", rel_gap(full.lhs, full.rhs), kExact));
  }
  for (const auto& [name, subset] :
       {std::pair{"hardy-littlewood full", &all}, {"hardy-littlewood thirds", &thirds},
        {"hardy-littlewood back-half", &back_half}}) {
    const auto hl = rearrangement::hardy_littlewood_check(u, *subset);
    out.checks.push_back(at_most(name, hl.lhs - hl.rhs, kExact * std::max(1.0, std::abs(hl.rhs))));
  }

  out.table.header = {"s_begin", "s_end", "value"};
  const auto b = sharp.breaks();
  const auto vals = sharp.values();
  for (std::size_t j = 0; j < vals.size(); ++j) out.table.rows.push_back({b[j], b[j + 1], vals[j]});
  return out;
}

Outcome poisson_run(const Scenario& sc) {
  const WeightedInterval space = comparison::make_shifted_cap(sc.K, sc.N, sc.a);
  const auto f = parse_f_spec(sc.f_spec);
  const poisson::RadialProblem problem{space, sc.p, f, space.inverse_cumulative(sc.v), {}};
  const auto u = poisson::solve_explicit(problem, sc.nodes);
  const auto primitive = poisson::load_in_mass(space, f, sc.v);

  Outcome out;
  out.checks.push_back(at_most("weak-residual", poisson::weak_residual(u, problem), sc.tol.rel));
  for (double r : sc.r_list) {
    const double physical = poisson::gradient_norm(u, r);
    const double mass = poisson::gradient_norm_mass(space, sc.p, r, sc.v, primitive);
    out.checks.push_back(at_most(label("gradient-identity r", r), rel_gap(mass, physical), sc.tol.rel));
  }
  const auto m = poisson::solve_mass_form(problem, primitive, sc.nodes);
  double gap = 0.0;
  for (double x : u.grid().nodes()) gap = std::max(gap, std::abs(m.value(x) - u.value(x)));
  out.checks.push_back(at_most("mass-form-agreement", gap / u.sup(), sc.tol.rel));

  out.table.header = {"rho", "u", "du"};
  const auto x = u.grid().nodes();
  for (std::size_t i = 0; i < x.size(); ++i) {
    out.table.rows.push_back({x[i], u.values()[i], u.slopes()[i]});
  }
  return out;
}

Outcome talenti_run(const Scenario& sc) {
  const auto f = parse_f_spec(sc.f_spec);
  const auto inst = comparison::make_instance(comparison::make_shifted_cap(sc.K, sc.N, sc.a),
                                              sc.v, sc.p, f, "scenario " + sc.name);
  const auto rep = comparison::run_comparison(inst, sc.r_list, sc.nodes);
  const bool equality = sc.a == 0.0 && f.nonincreasing;

  Outcome out;
  const double budget = sc.tol.abs + rep.grid_bound;
  out.checks.push_back(at_most("pointwise", rep.pointwise_violation, budget,
                               "grid_bound=" + format_double(rep.grid_bound)));
  out.checks.push_back(at_least("sup-bound", rep.sup_margin, -budget));
  out.table.header = {"r", "instance", "model"};
  for (const auto& [r, pair] : rep.gradient_gaps) {
    out.checks.push_back(at_least(label("gradient r", r), pair.second - pair.first, -sc.tol.abs));
    out.table.rows.push_back({r, pair.first, pair.second});
  }
  out.checks.push_back(at_least("levy-gromov", rep.levy_gromov_min_ratio, 1.0 - sc.tol.abs));
  out.checks.push_back(at_least("chain", rep.chain_min, 1.0 - sc.tol.rel));
  if (sc.a == 0.0) {
    out.checks.push_back(
        at_most("levy-gromov-equality", std::abs(rep.levy_gromov_min_ratio - 1.0), 1e-9));
  }
  if (equality) {
    out.checks.push_back(at_most("sharpness", rep.sharpness_gap, sc.tol.rel));
    out.checks.push_back(at_most("chain-equality",
                                 std::max(std::abs(rep.chain_min - 1.0), std::abs(rep.chain_max - 1.0)),
                                 sc.tol.rel));
  }
  return out;
}

Outcome eigen_run(const Scenario& sc) {
  const WeightedInterval space = comparison::make_shifted_cap(sc.K, sc.N, sc.a);
  const auto pair = eigen::first_eigenpair(space, sc.v, sc.p);
  Outcome out;
  out.checks.push_back(at_most("rayleigh", rel_gap(pair.rayleigh, pair.lambda), sc.tol.rel));
  const double fe = eigen::fe_rayleigh_eigenvalue(space, sc.v, sc.p);
  out.checks.push_back(at_most("fe-oracle", rel_gap(fe, pair.lambda), 1e-4,
                               "fe=" + format_double(fe)));
  const auto fk = eigen::faber_krahn_check(space, sc.v, sc.p);
  out.checks.push_back(at_least("faber-krahn", fk.margin, -sc.tol.abs,
                                "model=" + format_double(fk.lambda_model)));
  if (sc.a == 0.0) {
    out.checks.push_back(at_most("faber-krahn-equality", std::abs(fk.margin), sc.tol.rel));
  }

  const double lambda = pair.lambda;
  const double q = sc.p - 1.0;
  poisson::DataFunction datum;
  datum.value = [&](double r) { return lambda * std::pow(std::max(pair.z.value(r), 0.0), q); };
  datum.label = "eigen datum";
  const poisson::RadialProblem problem{space, sc.p, datum, pair.radius(), {}};
  out.checks.push_back(at_most("eigen-residual", poisson::weak_residual(pair.z, problem), sc.tol.rel));

  if (sc.K == sc.N - 1.0 && sc.p == 2.0 && sc.v == 0.5 && sc.a == 0.0) {
    out.checks.push_back(at_most("analytic-lambda", rel_gap(lambda, sc.N), 1e-4));
    double dist = 0.0;
    for (double x : pair.z.grid().nodes()) dist = std::max(dist, std::abs(pair.z.value(x) - std::cos(x)));
    out.checks.push_back(at_most("analytic-cos", dist, 1e-4));
  }

  out.table.header = {"t", "z", "dz"};
  const auto x = pair.z.grid().nodes();
  for (std::size_t i = 0; i < x.size(); ++i) {
    out.table.rows.push_back({x[i], pair.z.values()[i], pair.z.slopes()[i]});
  }
  return out;
}

Outcome holder_run(const Scenario& sc) {
  const ModelSpace model(sc.K, sc.N);
  const auto u = eigen::first_eigenpair(comparison::make_shifted_cap(sc.K, sc.N, sc.a), sc.v, sc.p);
  const auto z = eigen::model_partner(u, model);
  const double r = sc.p - 1.0;
  Outcome out;
  try {
    const auto chiti = eigen::chiti_compare(u, z, r, sc.tol.band);
    const bool single = chiti.degenerate || chiti.sign_changes == 1;
    out.checks.push_back(at_least("chiti-crossing", single ? 1.0 : 0.0, 1.0,
                                  "sign_changes=" + std::to_string(chiti.sign_changes) +
                                      (chiti.degenerate ? " degenerate" : "")));
    out.checks.push_back(at_most("chiti-ordering", chiti.max_violation, sc.tol.band));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kNoCrossing) throw;
    out.checks.push_back(at_least("chiti-crossing", 0.0, 1.0, e.what()));
    out.checks.push_back(at_most("chiti-ordering", kInf, sc.tol.band, "not evaluated"));
  }
  const auto rep = eigen::reverse_holder(u, z, r, sc.t_grid);
  out.table.header = {"t", "ratio_instance", "ratio_model"};
  for (double t : sc.t_grid) {
    const double ri = rep.ratios_instance.at(t);
    const double rm = rep.ratios_model.at(t);
    out.checks.push_back(at_least(label("holder t", t), rm - ri, -sc.tol.abs));
    if (sc.a == 0.0) {
      out.checks.push_back(at_most(label("holder-equality t", t), std::abs(rm - ri), sc.tol.abs));
    }
    out.table.rows.push_back({t, ri, rm});
  }
  return out;
}

Outcome sobolev_run(const Scenario& sc) {
  const WeightedInterval space = comparison::make_shifted_cap(sc.K, sc.N, sc.a);
  const auto f = parse_f_spec(sc.f_spec);
  const poisson::RadialProblem problem{space, sc.p, f, space.inverse_cumulative(sc.v), {}};
  const auto u = poisson::solve_explicit(problem, sc.nodes);
  const auto constants = sobolev::embedding_constants(sc.K, sc.N, sc.v, sc.p, sc.s, sc.t);

  Outcome out;
  const double kappa = (sc.s == kInf ? 0.0 : 1.0 / sc.s) - sc.p / sc.N;
  const bool c1_finite = kappa < 0.0 && std::abs(kappa) > 1e-12 * (sc.p / sc.N);
  out.checks.push_back(at_least("c1-finiteness",
                                c1_finite == !sobolev::is_divergent(constants.c1) ? 1.0 : 0.0, 1.0,
                                "c1=" + format_double(constants.c1)));
  std::vector<double> row = {sc.s, sc.t.value_or(0.0), constants.c1, constants.c2, 0.0, 0.0,
                             0.0, 0.0};
  if (c1_finite) {
    const auto check = sobolev::check_embedding(u, f, sc.s);
    out.checks.push_back(at_least("embedding-inf", check.slack, -sc.tol.abs));
    row[4] = check.lhs;
    row[5] = check.rhs;
  }
  if (sc.t) {
    const bool c2_finite = *sc.t / (sc.p - 1.0) * kappa < 1.0;
    out.checks.push_back(at_least("c2-finiteness",
                                  c2_finite == !sobolev::is_divergent(constants.c2) ? 1.0 : 0.0,
                                  1.0, "c2=" + format_double(constants.c2)));
    if (c2_finite) {
      const auto check = sobolev::check_embedding(u, f, sc.s, sc.t);
      out.checks.push_back(at_least("embedding-t", check.slack, -sc.tol.abs));
      row[6] = check.lhs;
      row[7] = check.rhs;
    }
  }
  out.table.header = {"s", "t", "c1", "c2", "lhs_inf", "rhs_inf", "lhs_t", "rhs_t"};
  out.table.rows.push_back(row);
  return out;
}

Outcome stability_run(const Scenario& sc) {
  const ModelSpace model(sc.K, sc.N);
  Outcome out;
  out.table.header = {"a", "diam_deficit", "delta", "lambda"};
  std::vector<double> deficits;
  std::vector<double> deltas;
  for (double a : sc.a_list) {
    const WeightedInterval space = comparison::make_shifted_cap(sc.K, sc.N, a);
    const auto u = eigen::first_eigenpair(space, sc.v, sc.p);
    const auto z = eigen::model_partner(u, model);
    const double delta = eigen::stability_deficit(u, z, sc.p, sc.Q);
    const double deficit = model.length() - space.length();
    deficits.push_back(deficit);
    deltas.push_back(delta);
    out.table.rows.push_back({a, deficit, delta, u.lambda});
  }
  double drop = 0.0;
  for (std::size_t i = 1; i < deltas.size(); ++i) drop = std::max(drop, deltas[i - 1] - deltas[i]);
  out.checks.push_back(at_least("spearman", spearman(deficits, deltas), 1.0 - 1e-12));
  out.checks.push_back(at_most("delta-nondecreasing", drop, 0.0));
  return out;
}

}  // namespace

bool RunRecord::passed() const {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string render_csv(const Table& table) {
  std::string out;
  for (std::size_t j = 0; j < table.header.size(); ++j) {
    out += (j ? "," : "") + table.header[j];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out += ',';
      out += format_double(row[j]);
    }
    out += '\n';
  }
  return out;
}

std::string render_record(const RunRecord& record) {
  std::ostringstream out;
  const Scenario& sc = record.scenario;
  out << "[record " << sc.name << "]\n";
  out << "kind = " << to_string(sc.kind) << "\n";
  out << "version = " << record.version << "\n";
  // The explicit kernel on a non-model density.
  if ((sc.kind == Kind::kPoisson || sc.kind == Kind::kTalenti) && sc.a > 0.0) {
    out << "extension = general-density\n";
  }
  for (const auto& [key, value] : sc.echo) out << "param." << key << " = " << value << "\n";
  out << "tol.abs = " << format_double(sc.tol.abs) << "\n";
  out << "tol.rel = " << format_double(sc.tol.rel) << "\n";
  out << "tol.band = " << format_double(sc.tol.band) << "\n";
  for (const auto& c : record.checks) {
    out << "check." << c.name << " = " << (c.passed ? "PASS" : "FAIL")
        << " measured=" << format_double(c.measured) << " limit=" << format_double(c.limit)
        << " slack=" << format_double(c.slack);
    if (!c.detail.empty()) out << " detail=\"" << c.detail << "\"";
    out << "\n";
  }
  char wall[32];
  std::snprintf(wall, sizeof wall, "%.3f", record.wall_seconds);
  out << "wall_seconds = " << wall << "\n";
  out << "status = " << (record.passed() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

RunRecord run_scenario(const Scenario& scenario) {
  RunRecord record;
  record.scenario = scenario;
  const auto start = std::chrono::steady_clock::now();
  try {
    Outcome out;
    switch (scenario.kind) {
      case Kind::kModelProbe: out = model_probe(scenario); break;
      case Kind::kSymmetrize: out = symmetrize(scenario); break;
      case Kind::kPoisson: out = poisson_run(scenario); break;
      case Kind::kTalenti: out = talenti_run(scenario); break;
      case Kind::kEigen: out = eigen_run(scenario); break;
      case Kind::kHolder: out = holder_run(scenario); break;
      case Kind::kSobolev: out = sobolev_run(scenario); break;
      case Kind::kStabilitySweep: out = stability_run(scenario); break;
    }
    record.checks = std::move(out.checks);
    record.table = std::move(out.table);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kParseError) throw;
    record.checks.push_back(Check{"execution", false, 0.0, 0.0, -kInf, e.what()});
  }
  record.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return record;
}

BatchResult run_batch(const std::vector<Scenario>& scenarios, unsigned jobs,
                      const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  BatchResult result;
  result.records.resize(scenarios.size());
  std::vector<std::exception_ptr> errors(scenarios.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < scenarios.size(); i = next++) {
      try {
        result.records[i] = run_scenario(scenarios[i]);
        const auto& rec = result.records[i];
        std::ofstream(out_dir / (rec.scenario.name + ".csv")) << render_csv(rec.table);
        std::ofstream(out_dir / (rec.scenario.name + ".record")) << render_record(rec);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(scenarios.size())));
  {
    std::vector<std::jthread> pool;
    for (unsigned k = 1; k < n; ++k) pool.emplace_back(worker);
    worker();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::ofstream summary(out_dir / "summary.record");
  result.all_passed = true;
  for (const auto& rec : result.records) {
    summary << "scenario." << rec.scenario.name << " = " << (rec.passed() ? "PASS" : "FAIL")
            << " checks=" << rec.checks.size() << "\n";
    result.all_passed = result.all_passed && rec.passed();
  }
  summary << "version = " << kKernelVersion << "\n";
  summary << "status = " << (result.all_passed ? "PASS" : "FAIL") << "\n";
  return result;
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorKind::kInvalidParameter, "spearman needs two equal series of length >= 2");
  }
  auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) { return v[i] < v[j]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < order.size();) {
      std::size_t j = i;
      while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
      const double mean = 0.5 * static_cast<double>(i + j) + 1.0;
      for (std::size_t k = i; k <= j; ++k) r[order[k]] = mean;
      i = j + 1;
    }
    return r;
  };
  const auto rx = ranks(x);
  const auto ry = ranks(y);
  const double n = static_cast<double>(x.size());
  const double mean = 0.5 * (n + 1.0);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (rx[i] - mean) * (ry[i] - mean);
    sxx += (rx[i] - mean) * (rx[i] - mean);
    syy += (ry[i] - mean) * (ry[i] - mean);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace talenti::cli
