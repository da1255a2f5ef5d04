// Copyright 2026 The xorcomm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "xorcomm/cli.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "xorcomm/bell_lift.hpp"
#include "xorcomm/family.hpp"
#include "xorcomm/game.hpp"
#include "xorcomm/reduction.hpp"
#include "xorcomm/solvers.hpp"

namespace xorcomm {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fmt17(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

XorGame load_game(const RunConfig& cfg) { return game_from_spec(game_source(cfg)); }

json base_parameters(const RunConfig& cfg) {
  json p = {{"game", game_source(cfg)}, {"seed", cfg.seed}, {"tol", cfg.tol}, {"heuristic", cfg.heuristic}};
  if (cfg.family_n) p["n"] = *cfg.family_n;
  return p;
}

json make_record(const RunConfig& cfg, const std::string& quantity) {
  return {{"version", kVersion},
          {"command", cfg.command},
          {"quantity", quantity},
          {"parameters", base_parameters(cfg)},
          {"exact", false},
          {"value", nullptr},
          {"certificate", nullptr}};
}

SeesawOptions seesaw_options(const RunConfig& cfg, int default_restarts) {
  SeesawOptions o;
  o.restarts = cfg.restarts.value_or(default_restarts);
  o.tol = cfg.tol;
  o.seed = cfg.seed;
  return o;
}

void fill_report(json& rec, const SolveReport& r) {
  rec["value"] = r.value;
  rec["exact"] = r.exact;
  rec["certificate"] = certificate_to_json(r.certificate);
  rec["details"]["restarts_used"] = r.restarts_used;
  rec["details"]["iterations"] = r.iterations;
}

// Exact one-way classical value, or local search when the guard is exceeded
// and --heuristic is set.
SolveReport ow_classical(const RunConfig& cfg, const XorGame& g, int k, std::vector<std::string>& log) {
  const std::uint64_t guard = cfg.guard.value_or(kOwClassicalGuard);
  if (ow_exact_feasible(g.x_count(), k, guard)) return ow_classical_value_exact(g, k, guard);
  if (!cfg.heuristic)
    throw GuardExceeded("(2k)^x_count = (" + std::to_string(2 * k) + ")^" + std::to_string(g.x_count()) +
                        " exceeds the guard; rerun with --heuristic for local search or raise --guard");
  log.push_back("omega_ow_classical(k=" + std::to_string(k) + ") computed by local search (lower bound)");
  return ow_classical_value_local(g, k, cfg.restarts.value_or(kDefaultLocalRestarts), cfg.seed);
}

SolveReport classical(const RunConfig& cfg, const XorGame& g, std::vector<std::string>& log) {
  const std::uint64_t guard = cfg.guard.value_or(kClassicalGuard);
  if (g.x_count() < 64 && (std::uint64_t{1} << g.x_count()) <= guard) return classical_value_exact(g, guard);
  if (!cfg.heuristic)
    throw GuardExceeded("2^x_count exceeds the guard; rerun with --heuristic for local search or raise --guard");
  log.push_back("omega computed by local search with k = 1 (lower bound)");
  return ow_classical_value_local(g, 1, cfg.restarts.value_or(kDefaultLocalRestarts), cfg.seed);
}

json lift_record(RunConfig& cfg, const XorGame& g, std::size_t d) {
  json rec = make_record(cfg, "bell_lift");
  rec["parameters"]["d"] = d;
  const std::size_t D = d * d;
  std::vector<std::string> log;

  const SolveReport q = ow_quantum_value_seesaw(g, d, true, seesaw_options(cfg, kDefaultOperatorRestarts));
  const auto& strat = std::get<QuantumOwStrategy>(q.certificate);
  const SolveReport c = ow_classical(cfg, g, static_cast<int>(D), log);

  const BellFunctional bf = build_lifted_functional(g, D);
  const LiftedStrategy ls = teleportation_strategy(g, strat);
  const double bell_q = evaluate_bell(bf, ls);
  const double direct = evaluate_quantum_ow(g.coefficients(), ls.effective).real();

  json out;
  out["omega_ow_quantum"] = q.value;
  out["omega_ow_classical"] = c.value;
  out["omega_ow_classical_exact"] = c.exact;
  out["bell_quantum_lower"] = bell_q;
  out["teleportation_residual"] = std::abs(bell_q - direct);
  out["communication_quotient"] = c.value > 0.0 ? q.value / c.value : 0.0;

  const std::uint64_t bell_guard = cfg.guard.value_or(kBellGuard);
  double bell_c = NAN;
  bool bell_exact = false;
  try {
    const SolveReport b = bell_classical_value_exact(bf, bell_guard);
    bell_c = b.value;
    bell_exact = true;
    rec["certificate"] = {{"quantum_ow", certificate_to_json(q.certificate)},
                          {"bell_deterministic", certificate_to_json(b.certificate)}};
  } catch (const GuardExceeded&) {
    if (!cfg.heuristic) throw;
    log.push_back("bell_classical not enumerated; omega_ow_classical(k=d^2) is used as its upper bound");
    rec["certificate"] = {{"quantum_ow", certificate_to_json(q.certificate)}};
  }
  const double bell_denominator = bell_exact ? bell_c : c.value;
  out["bell_classical"] = bell_exact ? json(bell_c) : json(nullptr);
  out["bell_quotient"] = bell_denominator > 0.0 ? bell_q / bell_denominator : 0.0;
  out["bell_quotient_is_lower_bound"] = !bell_exact;
  out["bell_classical_within_ow"] = bell_exact ? json(bell_c <= c.value + 1e-9) : json(nullptr);
  out["quotient_inequality_holds"] =
      out["bell_quotient"].get<double>() >= out["communication_quotient"].get<double>() - 1e-9;

  rec["details"] = out;
  rec["value"] = out["bell_quotient"];
  rec["exact"] = bell_exact && c.exact;
  if (!log.empty()) rec["log"] = log;
  return rec;
}

json reduce_record(RunConfig& cfg, int n, std::size_t d, std::size_t m, const FamilyGame& fg, bool m_given) {
  ReductionOptions opt;
  opt.eps = cfg.eps;
  if (cfg.restarts) opt.restarts = *cfg.restarts;
  const ReductionResult r = reduce_game(fg, d, m, cfg.seed, opt);
  json rec = make_record(cfg, "reduction_report");
  rec["parameters"]["d"] = d;
  rec["parameters"]["m"] = m;
  rec["parameters"]["eps"] = cfg.eps;
  auto values = [](const GameValues& v) {
    return json{{"omega_ow_classical", v.ow_classical},
                {"omega_ow_classical_exact", v.ow_classical_exact},
                {"omega_ow_quantum", v.ow_quantum},
                {"quotient", v.quotient}};
  };
  auto distortion = [](const DistortionReport& d) {
    return json{{"trials", d.trials}, {"min", d.min}, {"max", d.max}, {"mean", d.mean},
                {"band", {d.band_lo, d.band_hi}}, {"pass_fraction", d.pass_fraction}};
  };
  rec["details"] = {{"n", n},
                    {"reduced_game", game_to_json(r.reduced)},
                    {"normalizer", r.normalizer},
                    {"original", values(r.original)},
                    {"reduced", values(r.sampled)},
                    {"quotient_ratio", r.quotient_ratio},
                    {"within_band", r.within_band},
                    {"status", r.certified ? "certified" : "heuristic"},
                    {"distortion_j1", distortion(r.distortion1)},
                    {"distortion_j2", distortion(r.distortion2)},
                    {"j1", reduction_map_to_json(r.j1)},
                    {"j2", reduction_map_to_json(r.j2)}};
  rec["value"] = r.quotient_ratio;
  if (!m_given) rec["log"] = cfg.log;
  return rec;
}

std::vector<std::size_t> parse_sweep(const std::string& s) {
  if (s.rfind("m=", 0) != 0) throw InvalidInput("--sweep expects m=V1,V2,...");
  std::vector<std::size_t> out;
  std::stringstream ss(s.substr(2));
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoul(item));
    } catch (const std::exception&) {
      throw InvalidInput("--sweep: bad value '" + item + "'");
    }
  }
  if (out.empty()) throw InvalidInput("--sweep: no values");
  return out;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw InvalidInput("cannot write " + path);
  f << text;
}

std::string get_string_or(const json& j, const char* key, const std::string& def) {
  if (!j.contains(key) || j.at(key).is_null()) return def;
  const json& v = j.at(key);
  if (v.is_number_float()) return fmt17(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

}  // namespace

json game_source(const RunConfig& cfg) {
  if (cfg.family_n && !cfg.game_path.empty()) throw InvalidInput("give either --game or --family, not both");
  if (cfg.family_n) return {{"family", "rademacher"}, {"n", *cfg.family_n}};
  if (cfg.game_path.empty()) throw InvalidInput("a game is required (--game PATH or --family n=N)");
  std::ifstream f(cfg.game_path);
  if (!f) throw InvalidInput("cannot open game file " + cfg.game_path);
  try {
    return json::parse(f);
  } catch (const json::exception& e) {
    throw InvalidInput("malformed game file " + cfg.game_path + ": " + e.what());
  }
}

json cmd_solve(RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const XorGame g = load_game(cfg);
  json rec = make_record(cfg, cfg.quantity);
  std::vector<std::string> log;
  const std::string& q = cfg.quantity;

  if (q == "omega") {
    fill_report(rec, classical(cfg, g, log));
  } else if (q == "omega_star") {
    const std::size_t dim = cfg.d.value_or(std::min(g.x_count(), g.y_count()));
    rec["parameters"]["d"] = dim;
    fill_report(rec, quantum_value_seesaw(g, dim, seesaw_options(cfg, kDefaultVectorRestarts)));
  } else if (q == "omega_ow_classical") {
    rec["parameters"]["k"] = cfg.k;
    fill_report(rec, ow_classical(cfg, g, cfg.k, log));
  } else if (q == "omega_ow_quantum") {
    const std::size_t d = cfg.d.value_or(2);
    rec["parameters"]["d"] = d;
    rec["parameters"]["selfadjoint"] = !cfg.general;
    fill_report(rec, ow_quantum_value_seesaw(g, d, !cfg.general, seesaw_options(cfg, kDefaultOperatorRestarts)));
  } else if (q == "bell_classical") {
    const std::size_t d = cfg.d.value_or(2);
    rec["parameters"]["d"] = d;
    fill_report(rec, bell_classical_value_exact(build_lifted_functional(g, d * d), cfg.guard.value_or(kBellGuard)));
  } else if (q == "bell_quantum_lower") {
    const std::size_t d = cfg.d.value_or(2);
    rec["parameters"]["d"] = d;
    const SolveReport r = ow_quantum_value_seesaw(g, d, true, seesaw_options(cfg, kDefaultOperatorRestarts));
    const LiftedStrategy ls = teleportation_strategy(g, std::get<QuantumOwStrategy>(r.certificate));
    rec["value"] = evaluate_bell(build_lifted_functional(g, d * d), ls);
    rec["certificate"] = certificate_to_json(r.certificate);
  } else if (q == "distributional_complexity") {
    rec["parameters"]["eps"] = cfg.eps;
    rec["parameters"]["k_max"] = cfg.k;
    const DistributionalComplexity dc =
        distributional_complexity_ow(g, cfg.eps, cfg.k, cfg.guard.value_or(kOwClassicalGuard),
                                     cfg.restarts.value_or(kDefaultLocalRestarts), cfg.seed);
    rec["value"] = dc.messages ? json(*dc.messages) : json("none");
    rec["exact"] = !dc.heuristic;
    rec["details"] = {{"bits", dc.messages ? json(dc.bits) : json(nullptr)}, {"values", dc.values}};
    if (dc.heuristic) log.push_back("some omega_ow values came from local search");
  } else if (q == "family_strategy") {
    if (!cfg.family_n) throw InvalidInput("family_strategy requires --family n=N");
    const FamilyStrategy fs = family_quantum_strategy(*cfg.family_n);
    const SplitResult split = selfadjoint_split(g.coefficients(), fs.strategy);
    rec["value"] = fs.value;
    rec["exact"] = true;
    rec["certificate"] = certificate_to_json(fs.strategy);
    rec["details"] = {{"closed_form", fs.closed_form},
                      {"selfadjoint_split_value", split.value},
                      {"value_times_sqrt_n", fs.value * std::sqrt(static_cast<double>(*cfg.family_n))}};
  } else {
    throw InvalidInput("unknown quantity: " + q);
  }
  if (!log.empty()) rec["log"] = log;
  rec["elapsed_seconds"] = since(t0);
  return rec;
}

json cmd_lift(RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const XorGame g = load_game(cfg);
  json rec = lift_record(cfg, g, cfg.d.value_or(2));
  rec["elapsed_seconds"] = since(t0);
  return rec;
}

json cmd_reduce(RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  if (!cfg.family_n) throw InvalidInput("reduce requires --family n=N");
  const int n = *cfg.family_n;
  if (n > 3) throw InvalidInput("reduce supports family games with n <= 3");
  const FamilyGame fg = build_family_game(n);
  const std::size_t d = cfg.d.value_or(2);
  const std::size_t cap = std::min(fg.game.x_count(), fg.game.y_count());

  if (!cfg.sweep.empty()) {
    std::ostringstream csv;
    csv << "m,seed,pass_fraction_j1,pass_fraction_j2,min_ratio_j1,max_ratio_j1,min_ratio_j2,max_ratio_j2,"
           "quotient_ratio,within_band\n";
    for (std::size_t m : parse_sweep(cfg.sweep)) {
      const json r = reduce_record(cfg, n, d, m, fg, true);
      const json& det = r["details"];
      csv << m << ',' << cfg.seed << ',' << fmt17(det["distortion_j1"]["pass_fraction"]) << ','
          << fmt17(det["distortion_j2"]["pass_fraction"]) << ',' << fmt17(det["distortion_j1"]["min"]) << ','
          << fmt17(det["distortion_j1"]["max"]) << ',' << fmt17(det["distortion_j2"]["min"]) << ','
          << fmt17(det["distortion_j2"]["max"]) << ',' << fmt17(det["quotient_ratio"]) << ','
          << (det["within_band"].get<bool>() ? "true" : "false") << '\n';
    }
    return {{"csv", csv.str()}};
  }

  std::size_t m;
  if (cfg.m) {
    m = *cfg.m;
  } else {
    const std::size_t dim = static_cast<std::size_t>(n) * static_cast<std::size_t>(n) * d * d;
    m = std::min(16 * dim * dim, cap);
    cfg.log.push_back("m defaulted to min(16 dim(E)^2, " + std::to_string(cap) + ") = " + std::to_string(m));
  }
  json rec = reduce_record(cfg, n, d, m, fg, cfg.m.has_value());
  rec["elapsed_seconds"] = since(t0);
  return rec;
}

std::string record_to_csv(const json& r) {
  const json& p = r.contains("parameters") ? r.at("parameters") : json::object();
  std::ostringstream o;
  o << "quantity,value,exact,n,k,d,seed,elapsed_seconds\n";
  o << get_string_or(r, "quantity", "") << ',' << get_string_or(r, "value", "") << ','
    << get_string_or(r, "exact", "") << ',' << get_string_or(p, "n", "") << ',' << get_string_or(p, "k", "") << ','
    << get_string_or(p, "d", "") << ',' << get_string_or(p, "seed", "") << ','
    << get_string_or(r, "elapsed_seconds", "") << '\n';
  return o.str();
}

ReportOutput cmd_report(const RunConfig& cfg) {
  if (cfg.input.empty()) throw InvalidInput("report requires --input DIR");
  if (!fs::is_directory(cfg.input)) throw InvalidInput("not a directory: " + cfg.input);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(cfg.input))
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());

  ReportOutput out;
  std::ostringstream csv;
  csv << "file,quantity,value,exact,n,k,d,seed,elapsed_seconds\n";

  struct Row {
    std::optional<double> quantum, classical, family;
    bool classical_exact = false;
  };
  std::map<int, Row> by_n;

  for (const auto& path : files) {
    json r;
    try {
      std::ifstream f(path);
      r = json::parse(f);
      if (!r.is_object() || !r.contains("quantity") || !r.contains("value")) throw InvalidInput("not a record");
    } catch (const std::exception& e) {
      std::cerr << "warning: skipping " << path.filename().string() << ": " << e.what() << '\n';
      ++out.skipped;
      continue;
    }
    ++out.records;
    const std::string row = record_to_csv(r);
    csv << path.filename().string() << ',' << row.substr(row.find('\n') + 1);

    const json& p = r.value("parameters", json::object());
    if (!p.contains("n") || !r["value"].is_number()) continue;
    const int n = p["n"].get<int>();
    const std::string q = r["quantity"].get<std::string>();
    const double v = r["value"].get<double>();
    Row& row_n = by_n[n];
    if (q == "omega_ow_quantum" && p.value("d", 0) == n && p.value("selfadjoint", true)) row_n.quantum = v;
    if (q == "omega_ow_classical" && p.value("k", 0) == n) {
      row_n.classical = v;
      row_n.classical_exact = r.value("exact", false);
    }
    if (q == "family_strategy") row_n.family = v;
  }
  if (out.records == 0) throw InvalidInput("report: no valid records in " + cfg.input);
  out.csv = csv.str();

  auto opt = [](const std::optional<double>& v) { return v ? fmt17(*v) : std::string(); };
  std::ostringstream sum;
  sum << "n,ow_quantum_seesaw,ow_classical,ow_classical_exact,ratio,khintchine_k,khintchine_bound,vacuous,"
         "family_strategy,family_strategy_times_sqrt_n\n";
  for (const auto& [n, row] : by_n) {
    const int kk = std::max(n, 8);
    const KhintchineBound kb = khintchine_upper_bound(n, kk);
    std::string ratio;
    if (row.quantum && row.classical && *row.classical > 0.0) ratio = fmt17(*row.quantum / *row.classical);
    sum << n << ',' << opt(row.quantum) << ',' << opt(row.classical) << ','
        << (row.classical ? (row.classical_exact ? "true" : "false") : "") << ',' << ratio << ',' << kk << ','
        << fmt17(kb.value) << ',' << (kb.vacuous ? "true" : "false") << ',' << opt(row.family) << ','
        << (row.family ? fmt17(*row.family * std::sqrt(static_cast<double>(n))) : "") << '\n';
  }
  out.summary = sum.str();
  return out;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Values of XOR games under one-way communication"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  RunConfig cfg;

  std::string family;
  std::size_t d = 0;
  int restarts = 0;
  std::uint64_t guard = 0;
  std::size_t m = 0;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--game", cfg.game_path, "Game JSON file");
    sub->add_option("--family", family, "Family game, e.g. n=2");
    sub->add_option("--k", cfg.k, "Message alphabet size (k_max for distributional_complexity)");
    sub->add_option("--d", d, "Matrix dimension");
    sub->add_option("--restarts", restarts, "Restarts per solver");
    sub->add_option("--tol", cfg.tol, "See-saw relative tolerance");
    sub->add_option("--seed", cfg.seed, "Base seed");
    sub->add_option("--guard", guard, "Enumeration guard");
    sub->add_option("--eps", cfg.eps, "Bias target / distortion tolerance");
    sub->add_option("--out", cfg.out, "Output path (default stdout)");
    sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_flag("--heuristic", cfg.heuristic, "Fall back to local search when a guard is exceeded");
    sub->add_option("--threads", cfg.threads, "OpenMP threads (default: all)");
  };
  CLI::App* solve = app.add_subcommand("solve", "Compute one quantity");
  common(solve);
  solve->add_option("--quantity", cfg.quantity,
                    "omega | omega_star | omega_ow_classical | omega_ow_quantum | bell_classical | "
                    "bell_quantum_lower | distributional_complexity | family_strategy");
  solve->add_flag("--general", cfg.general, "Non-Hermitian operator see-saw");
  CLI::App* lift = app.add_subcommand("lift", "Bell lift quotients");
  common(lift);
  CLI::App* reduce = app.add_subcommand("reduce", "Input reduction of a family game");
  common(reduce);
  reduce->add_option("--n", family, "Family parameter (same as --family n=N)")->transform([](std::string s) {
    return "n=" + s;
  });
  reduce->add_option("--m", m, "Reduced input count");
  reduce->add_option("--sweep", cfg.sweep, "m=V1,V2,...");
  CLI::App* report = app.add_subcommand("report", "Aggregate records");
  report->add_option("--input", cfg.input, "Directory of JSON records")->required();
  report->add_option("--out", cfg.out, "CSV output path; the summary goes to <stem>_summary.csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (!family.empty()) {
      if (family.rfind("n=", 0) != 0) throw InvalidInput("--family expects n=N");
      try {
        cfg.family_n = std::stoi(family.substr(2));
      } catch (const std::exception&) {
        throw InvalidInput("--family expects n=N");
      }
    }
    if (d > 0) cfg.d = d;
    if (restarts > 0) cfg.restarts = restarts;
    if (guard > 0) cfg.guard = guard;
    if (m > 0) cfg.m = m;
    if (cfg.threads > 0) omp_set_num_threads(cfg.threads);

    CLI::App* sub = app.get_subcommands().front();
    cfg.command = sub->get_name();
    if (cfg.command == "report") {
      const ReportOutput r = cmd_report(cfg);
      if (cfg.out.empty()) {
        std::cout << r.csv << '\n' << r.summary;
      } else {
        write_output(cfg.out, r.csv);
        const fs::path p(cfg.out);
        write_output((p.parent_path() / (p.stem().string() + "_summary.csv")).string(), r.summary);
      }
      return r.skipped > 0 ? kExitPartial : kExitOk;
    }

    json rec;
    if (cfg.command == "solve") rec = cmd_solve(cfg);
    if (cfg.command == "lift") rec = cmd_lift(cfg);
    if (cfg.command == "reduce") rec = cmd_reduce(cfg);
    if (rec.contains("csv")) {
      write_output(cfg.out, rec["csv"].get<std::string>());
    } else if (cfg.format == "csv") {
      write_output(cfg.out, record_to_csv(rec));
    } else {
      write_output(cfg.out, rec.dump(2) + "\n");
    }
    if (rec.contains("log"))
      for (const auto& line : rec["log"]) std::cerr << "note: " << line.get<std::string>() << '\n';
    return kExitOk;
  } catch (const GuardExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitGuard;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
}

}  // namespace xorcomm
