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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_util.hpp"
#include "xorcomm/bell_lift.hpp"
#include "xorcomm/family.hpp"
#include "xorcomm/solvers.hpp"

namespace xorcomm {
namespace {

TEST(LiftedFunctional, DeltaStructure) {
  const XorGame g = chsh_game();
  const std::size_t D = 2;
  const BellFunctional b = build_lifted_functional(g, D);
  EXPECT_EQ(b.x_count(), 2u);
  EXPECT_EQ(b.y_count(), 4u);
  EXPECT_EQ(b.a_count(), 4u);
  EXPECT_EQ(b.b_count(), 2u);
  EXPECT_DOUBLE_EQ(b(lift_alice_output(1, 1), lift_bob_output(1), 0, lift_bob_input(0, 1, D)), 0.25);
  EXPECT_DOUBLE_EQ(b(lift_alice_output(1, -1), lift_bob_output(1), 1, lift_bob_input(1, 1, D)), 0.25);
  // a != k vanishes
  EXPECT_EQ(b(lift_alice_output(0, 1), lift_bob_output(1), 0, lift_bob_input(0, 1, D)), 0.0);
  double mass = 0.0;
  for (double c : b.coeffs()) mass += std::abs(c);
  EXPECT_NEAR(mass, 4.0 * D, 1e-12);  // sum |T| * D messages * 4 sign pairs
}

TEST(Weyl, UnitaryAndComplete) {
  std::mt19937_64 rng(5);
  for (std::size_t d = 1; d <= 6; ++d) {
    const WeylSet w = weyl_unitaries(d);
    ASSERT_EQ(w.unitaries.size(), d * d);
    for (const auto& u : w.unitaries) EXPECT_LE((u * u.adjoint() - ComplexMatrix::identity(d)).max_abs(), 1e-12);
    for (int t = 0; t < 3; ++t) EXPECT_LE(weyl_completeness_error(w, random_gaussian(d, d, rng)), 1e-10);
  }
}

TEST(Weyl, QubitPaulisUpToPhase) {
  const WeylSet w = weyl_unitaries(2);
  // W_{2,2} = v_2 u_2 = I; W_{1,1} = v_1 u_1 = X Z, proportional to Y.
  EXPECT_LE((w.at(2, 2) - ComplexMatrix::identity(2)).max_abs(), 1e-15);
  const ComplexMatrix x = ComplexMatrix::from_real({{0, 1}, {1, 0}});
  const ComplexMatrix z = ComplexMatrix::from_real({{1, 0}, {0, -1}});
  EXPECT_LE((w.at(1, 2) - x).max_abs(), 1e-15);
  EXPECT_LE((w.at(2, 1) - z).max_abs(), 1e-15);
  EXPECT_LE((w.at(1, 1) - x * z).max_abs(), 1e-15);
}

QuantumOwStrategy seesaw_strategy(const XorGame& g, std::size_t d, std::uint64_t seed) {
  SeesawOptions o;
  o.restarts = 8;
  o.seed = seed;
  return std::get<QuantumOwStrategy>(ow_quantum_value_seesaw(g, d, true, o).certificate);
}

TEST(Teleportation, PositiveRHasNoMinusOutcomes) {
  const XorGame g = chsh_game();
  QuantumOwStrategy s;
  s.d = 2;
  for (int x = 0; x < 2; ++x) {
    ComplexMatrix r(2, 2);
    r(x, x) = 1;
    s.r_list.push_back(r);
    s.b_list.push_back(ComplexMatrix::identity(2));
  }
  const LiftedStrategy ls = teleportation_strategy(g, s);
  for (const auto& povm : ls.alice_povms)
    for (std::size_t a = 0; a < 4; ++a) EXPECT_LE(povm[lift_alice_output(a, -1)].max_abs(), 1e-15);
  // B = I: Bob always answers +1.
  for (const auto& p : ls.bob_povms) {
    EXPECT_LE((p[0] - ComplexMatrix::identity(2)).max_abs(), 1e-15);
    EXPECT_LE(p[1].max_abs(), 1e-15);
  }
}

TEST(Teleportation, RejectsGeneralStrategies) {
  QuantumOwStrategy s = seesaw_strategy(chsh_game(), 2, 0);
  s.selfadjoint = false;
  EXPECT_THROW(teleportation_strategy(chsh_game(), s), InvalidInput);
}

TEST(EvaluateBell, ZeroFunctionalIsZero) {
  const XorGame g = chsh_game();
  const LiftedStrategy ls = teleportation_strategy(g, seesaw_strategy(g, 2, 1));
  const BellFunctional zero(2, 8, 8, 2);
  EXPECT_EQ(evaluate_bell(zero, ls), 0.0);
}

TEST(EvaluateBell, ChshDiagonalEmbedding) {
  const XorGame g = chsh_game();
  const SolveReport cl = ow_classical_value_exact(g, 2);
  ASSERT_NEAR(cl.value, 1.0, 1e-15);
  const QuantumOwStrategy s = diagonal_embedding(std::get<ClassicalOwStrategy>(cl.certificate), 2);
  const LiftedStrategy ls = teleportation_strategy(g, s);
  EXPECT_NEAR(evaluate_bell(build_lifted_functional(g, 4), ls), 1.0, 1e-12);
}

TEST(EvaluateBell, TeleportationEqualityOnRandomGames) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const XorGame g = testing::random_sized_game(rng, 2, 4);
    for (std::size_t d : {1, 2, 3}) {
      const LiftedStrategy ls = teleportation_strategy(g, seesaw_strategy(g, d, trial));
      const double bell = evaluate_bell(build_lifted_functional(g, d * d), ls);
      const double ow = evaluate_quantum_ow(g.coefficients(), ls.effective).real();
      EXPECT_NEAR(bell, ow, 1e-10) << "trial " << trial << " d " << d;
    }
  }
}

TEST(EvaluateBell, FamilyN2SplitStrategy) {
  const FamilyGame fg = build_family_game(2);
  const FamilyStrategy fs = family_quantum_strategy(2);
  const SplitResult split = selfadjoint_split(fg.game.coefficients(), fs.strategy);
  const LiftedStrategy ls = teleportation_strategy(fg.game, split.strategy);
  EXPECT_NEAR(evaluate_bell(build_lifted_functional(fg.game, 4), ls), split.value, 1e-10);
}

TEST(EvaluateBell, ZeroRUsesMaximallyMixedSplit) {
  const XorGame g = chsh_game();
  QuantumOwStrategy s = seesaw_strategy(g, 2, 2);
  s.r_list[0] = ComplexMatrix(2, 2);
  const LiftedStrategy ls = teleportation_strategy(g, s);
  EXPECT_NO_THROW(ls.validate());
  const double bell = evaluate_bell(build_lifted_functional(g, 4), ls);
  EXPECT_NEAR(bell, evaluate_quantum_ow(g.coefficients(), ls.effective).real(), 1e-12);
}

TEST(LiftedStrategyValidate, DetectsBrokenPovm) {
  const XorGame g = chsh_game();
  LiftedStrategy ls = teleportation_strategy(g, seesaw_strategy(g, 2, 3));
  ls.bob_povms[0][0] *= 1.5;
  EXPECT_THROW(ls.validate(), std::logic_error);
  LiftedStrategy neg = teleportation_strategy(g, seesaw_strategy(g, 2, 3));
  neg.alice_povms[0][0] = -1.0 * neg.alice_povms[0][0];
  EXPECT_THROW(neg.validate(), std::logic_error);
}

}  // namespace
}  // namespace xorcomm
