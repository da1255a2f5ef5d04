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

// Acceptance checks 1-14: one PASS/FAIL line each, nonzero exit on failure.

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "test_util.hpp"
#include "xorcomm/bell_lift.hpp"
#include "xorcomm/cli.hpp"
#include "xorcomm/family.hpp"
#include "xorcomm/reduction.hpp"
#include "xorcomm/solvers.hpp"

namespace {

using namespace xorcomm;
using nlohmann::json;
namespace fs = std::filesystem;

constexpr double kGrothendieck = 1.7823;

struct Check {
  bool ok = true;
  std::ostringstream why;

  void expect(bool cond, const std::string& msg) {
    if (!cond && ok) why << msg;
    ok = ok && cond;
  }
};

int failures = 0;

void criterion(int id, const char* title, double budget_seconds, const std::function<void(Check&)>& body) {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.ok = false;
    c.why << "exception: " << e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_seconds > 0 && secs > budget_seconds) {
    if (c.ok) c.why << "time " << secs << " s exceeds budget " << budget_seconds << " s";
    c.ok = false;
  }
  std::printf("[%s] %2d %s (%.2f s)%s%s\n", c.ok ? "PASS" : "FAIL", id, title, secs, c.ok ? "" : ": ",
              c.ok ? "" : c.why.str().c_str());
  std::fflush(stdout);
  if (!c.ok) ++failures;
}

std::string str(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

QuantumOwStrategy seesaw_cert(const XorGame& g, std::size_t d, bool selfadjoint, int restarts, std::uint64_t seed,
                              const QuantumOwStrategy* warm = nullptr) {
  SeesawOptions o;
  o.restarts = restarts;
  o.seed = seed;
  return std::get<QuantumOwStrategy>(ow_quantum_value_seesaw(g, d, selfadjoint, o, warm).certificate);
}

// 100 random games with sizes in [1, 6], shared by criteria 7 and 8.
std::vector<XorGame> game_suite() {
  std::mt19937_64 rng(2024);
  std::vector<XorGame> games;
  for (int i = 0; i < 100; ++i) games.push_back(testing::random_sized_game(rng, 1, 6));
  return games;
}

}  // namespace

int main() {
  criterion(1, "CHSH classical 0.5 and quantum 1/sqrt 2", 1.0, [](Check& c) {
    const XorGame g = chsh_game();
    const SolveReport cl = classical_value_exact(g);
    c.expect(cl.value == 0.5, "classical = " + str(cl.value));
    SeesawOptions o;
    o.restarts = 8;
    const SolveReport q = quantum_value_seesaw(g, 2, o);
    c.expect(std::abs(q.value - 0.7071068) <= 1e-6, "quantum = " + str(q.value));
  });

  criterion(2, "family n=1 value, M, explicit strategy, closed form n<=3", 10.0, [](Check& c) {
    const FamilyGame fg = build_family_game(1);
    c.expect(fg.m_normalizer == 8, "M = " + std::to_string(fg.m_normalizer));
    const double w = classical_value_exact(fg.game).value;
    c.expect(w == 1.0, "omega = " + str(w));
    const FamilyStrategy one = family_quantum_strategy(1);
    c.expect(std::abs(one.value - 1.0) <= 1e-12, "strategy value = " + str(one.value));
    for (int n = 1; n <= 3; ++n) {
      const FamilyStrategy fs = family_quantum_strategy(n);
      c.expect(std::abs(fs.value - fs.closed_form) <= 1e-10,
               "n=" + std::to_string(n) + " direct " + str(fs.value) + " vs closed " + str(fs.closed_form));
    }
  });

  criterion(3, "bounds on M for n = 1..4", 30.0, [](Check& c) {
    for (int n = 1; n <= 4; ++n) {
      const std::uint64_t m = compute_M(n);
      c.expect(family_M_within_bounds(n, m), "n=" + std::to_string(n) + " M=" + std::to_string(m));
    }
  });

  criterion(4, "Weyl completeness for d = 1..6", 1.0, [](Check& c) {
    std::mt19937_64 rng(4);
    double worst = 0.0;
    for (std::size_t d = 1; d <= 6; ++d) {
      const WeylSet w = weyl_unitaries(d);
      for (int t = 0; t < 20; ++t) worst = std::max(worst, weyl_completeness_error(w, random_gaussian(d, d, rng)));
    }
    c.expect(worst <= 1e-10, "max error " + str(worst));
  });

  criterion(5, "teleportation equality", 10.0, [](Check& c) {
    struct Case {
      XorGame g;
      std::size_t d;
      const char* name;
    };
    const XorGame f1 = build_family_game(1).game, f2 = build_family_game(2).game;
    const std::vector<Case> cases = {{f1, 2, "family n=1 d=2"},
                                     {chsh_game(), 2, "CHSH d=2"},
                                     {f2, 2, "family n=2 d=2"},
                                     {f2, 3, "family n=2 d=3"}};
    for (const Case& k : cases) {
      const LiftedStrategy ls = teleportation_strategy(k.g, seesaw_cert(k.g, k.d, true, 4, 5));
      const double bell = evaluate_bell(build_lifted_functional(k.g, k.d * k.d), ls);
      const double ow = evaluate_quantum_ow(k.g.coefficients(), ls.effective).real();
      c.expect(std::abs(bell - ow) <= 1e-10, std::string(k.name) + ": " + str(bell) + " vs " + str(ow));
    }
  });

  criterion(6, "lifted classical value <= one-way classical value (k=4)", 60.0, [](Check& c) {
    std::mt19937_64 rng(6);
    std::vector<XorGame> games;
    for (int i = 0; i < 20; ++i) games.push_back(testing::random_sized_game(rng, 1, 3));
    games.push_back(build_family_game(1).game);
    for (std::size_t i = 0; i < games.size(); ++i) {
      const double bell = bell_classical_value_exact(build_lifted_functional(games[i], 4)).value;
      const double ow = ow_classical_value_exact(games[i], 4).value;
      c.expect(bell <= ow + 1e-9, "game " + std::to_string(i) + ": " + str(bell) + " > " + str(ow));
    }
  });

  const std::vector<XorGame> suite = game_suite();

  criterion(7, "monotonicity and saturation of one-way classical values", 60.0, [&](Check& c) {
    for (std::size_t i = 0; i < suite.size(); ++i) {
      const XorGame& g = suite[i];
      const double w = classical_value_exact(g).value;
      const double w2 = ow_classical_value_exact(g, 2).value;
      const double w3 = ow_classical_value_exact(g, 3).value;
      const std::string id = "game " + std::to_string(i) + ": ";
      c.expect(w <= w2 + 1e-12 && w2 <= w3 + 1e-12 && w3 <= 1 + 1e-12,
               id + str(w) + ", " + str(w2) + ", " + str(w3));
      for (int k : {2, 3})
        if (static_cast<std::size_t>(k) >= g.x_count()) {
          const double v = k == 2 ? w2 : w3;
          c.expect(std::abs(v - 1.0) <= 1e-12, id + "k=" + std::to_string(k) + " value " + str(v));
        }
    }
  });

  criterion(8, "Grothendieck and sqrt(d) bounds", 300.0, [&](Check& c) {
    for (std::size_t i = 0; i < suite.size(); ++i) {
      const XorGame& g = suite[i];
      const double w = classical_value_exact(g).value;
      SeesawOptions o;
      o.restarts = 4;
      o.seed = i;
      const double q = quantum_value_seesaw(g, std::min(g.x_count(), g.y_count()), o).value;
      const std::string id = "game " + std::to_string(i) + ": ";
      c.expect(q <= kGrothendieck * w + 1e-12, id + "omega* " + str(q) + " vs omega " + str(w));
      for (std::size_t d : {2, 3}) {
        const double qd = ow_quantum_value_seesaw(g, d, true, o).value;
        c.expect(qd <= std::sqrt(static_cast<double>(d)) * kGrothendieck * w + 1e-12,
                 id + "d=" + std::to_string(d) + " " + str(qd));
      }
    }
  });

  criterion(9, "self-adjoint split keeps a quarter of the value", 60.0, [](Check& c) {
    const FamilyGame fg = build_family_game(2);
    const FamilyStrategy fs = family_quantum_strategy(2);
    const QuantumOwStrategy fam = seesaw_cert(fg.game, 2, false, 4, 9, &fs.strategy);
    const double v = evaluate_quantum_ow(fg.game.coefficients(), fam).real();
    const SplitResult s = selfadjoint_split(fg.game.coefficients(), fam);
    c.expect(s.value >= v / 4 - 1e-12, "family n=2: " + str(s.value) + " vs " + str(v));
    std::mt19937_64 rng(9);
    for (int i = 0; i < 20; ++i) {
      const XorGame g = testing::random_sized_game(rng, 2, 5);
      const QuantumOwStrategy gen = seesaw_cert(g, 2, false, 4, i);
      const double gv = evaluate_quantum_ow(g.coefficients(), gen).real();
      const SplitResult sp = selfadjoint_split(g.coefficients(), gen);
      c.expect(sp.value >= gv / 4 - 1e-12, "game " + std::to_string(i) + ": " + str(sp.value) + " vs " + str(gv));
    }
  });

  criterion(10, "Khintchine p=1 single (n<=10) and double (n<=4)", 30.0, [](Check& c) {
    for (int n = 1; n <= 10; ++n) {
      const KhintchineReport r = khintchine_empirical(n, 100, 1000 + n, 4);
      c.expect(r.single_slack >= -1e-12, "single n=" + std::to_string(n) + " slack " + str(r.single_slack));
      if (n <= 4) {
        c.expect(r.double_checked, "double form skipped at n=" + std::to_string(n));
        c.expect(r.double_slack >= -1e-12, "double n=" + std::to_string(n) + " slack " + str(r.double_slack));
      }
    }
  });

  criterion(11, "embedding factorization equals the family game", 5.0, [](Check& c) {
    for (int n = 1; n <= 2; ++n) {
      const FamilyGame fg = build_family_game(n);
      const RealMatrix e = embed_scaled_identity(subspace_embeddings(n), fg.m_normalizer);
      double worst = 0.0;
      for (std::size_t i = 0; i < e.data().size(); ++i)
        worst = std::max(worst, std::abs(e.data()[i] - fg.game.coefficients().data()[i]));
      c.expect(worst <= 1e-12, "n=" + std::to_string(n) + " max diff " + str(worst));
    }
  });

  criterion(12, "reduction pipeline", 300.0, [](Check& c) {
    const FamilyGame fg = build_family_game(2);
    const NormalizedGame id =
        apply_reduction(fg.game.coefficients(), ReductionMap::identity(16), ReductionMap::identity(16));
    c.expect(id.normalizer == 1.0 && id.game.coefficients() == fg.game.coefficients(),
             "identity reduction changed the game");
    const std::size_t d = 2;
    const SubspaceEmbedding e = subspace_embeddings(2);
    const std::size_t dim = e.j1.cols * d * d;  // dim(span j) * dim(M_d)
    const std::size_t m = 16 * dim * dim;
    const auto b1 = tensor_basis(e.j1, d), b2 = tensor_basis(e.j2, d);
    int good = 0;
    std::ostringstream detail;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const ReductionMap j1 = sample_reduction_map(e.j1.rows, m, row_masses(e.j1), 2 * seed);
      const ReductionMap j2 = sample_reduction_map(e.j2.rows, m, row_masses(e.j2), 2 * seed + 1);
      const DistortionReport r1 = verify_isomorphism(j1, b1, BlockNorm::kOperator, 0.5, 200, 100 * seed);
      const DistortionReport r2 = verify_isomorphism(j2, b2, BlockNorm::kOperator, 0.5, 200, 100 * seed + 50);
      if (r1.pass_fraction >= 0.95 && r2.pass_fraction >= 0.95) ++good;
      detail << ' ' << r1.pass_fraction << '/' << r2.pass_fraction;
    }
    std::printf("     m = %zu, pass fractions (j1/j2) per seed:%s\n", m, detail.str().c_str());
    c.expect(good >= 8, std::to_string(good) + " of 10 seeds passed");
  });

  criterion(13, "determinism across thread counts", 0.0, [](Check& c) {
    const int max_threads = omp_get_max_threads();
    auto strip = [](json r) {
      r.erase("elapsed_seconds");
      return r.dump();
    };
    auto configs = [] {
      std::vector<RunConfig> v(5);
      v[0].quantity = "omega";
      v[0].family_n = 2;
      v[1].quantity = "omega_star";
      v[1].family_n = 2;
      v[1].restarts = 4;
      v[2].quantity = "omega_ow_classical";
      v[2].family_n = 2;
      v[2].k = 2;
      v[2].heuristic = true;  // local search: 4^16 exceeds the guard below
      v[2].guard = std::uint64_t{1} << 20;
      v[3].quantity = "omega_ow_quantum";
      v[3].family_n = 2;
      v[3].restarts = 4;
      v[3].seed = 13;
      v[4].quantity = "bell_classical";
      v[4].family_n = 1;
      for (auto& cfg : v) cfg.command = "solve";
      return v;
    };
    std::vector<RunConfig> a = configs(), b = configs();
    for (std::size_t i = 0; i < a.size(); ++i) {
      omp_set_num_threads(1);
      const std::string one = strip(cmd_solve(a[i]));
      omp_set_num_threads(4);
      const std::string four = strip(cmd_solve(b[i]));
      c.expect(one == four, "command " + a[i].quantity + " differs between 1 and 4 threads");
    }
    RunConfig r1, r4;
    r1.command = r4.command = "reduce";
    r1.family_n = r4.family_n = 2;
    r1.m = r4.m = 8;
    r1.restarts = r4.restarts = 2;
    omp_set_num_threads(1);
    const std::string red1 = strip(cmd_reduce(r1));
    omp_set_num_threads(4);
    c.expect(red1 == strip(cmd_reduce(r4)), "reduce differs between 1 and 4 threads");
    omp_set_num_threads(max_threads);
  });

  criterion(14, "trend report (reported, not asserted)", 0.0, [](Check& c) {
    const fs::path dir = fs::temp_directory_path() / "xorcomm_acceptance_trend";
    fs::remove_all(dir);
    fs::create_directories(dir);
    for (int n = 1; n <= 3; ++n) {
      const std::size_t nn = static_cast<std::size_t>(n);
      auto write = [&](RunConfig cfg, const std::string& name) {
        cfg.command = "solve";
        cfg.family_n = n;
        std::ofstream(dir / name) << cmd_solve(cfg).dump(2);
      };
      RunConfig q;
      q.quantity = "omega_ow_quantum";
      q.d = nn;
      q.restarts = 8;
      write(q, "q" + std::to_string(n) + ".json");
      RunConfig cl;
      cl.quantity = "omega_ow_classical";
      cl.k = n;
      cl.heuristic = true;
      cl.restarts = 64;
      write(cl, "c" + std::to_string(n) + ".json");
      RunConfig f;
      f.quantity = "family_strategy";
      write(f, "f" + std::to_string(n) + ".json");
    }
    RunConfig rep;
    rep.command = "report";
    rep.input = dir.string();
    const ReportOutput out = cmd_report(rep);
    std::cout << out.summary;
    c.expect(out.records == 9 && out.skipped == 0, "report did not read all records");
    fs::remove_all(dir);
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
