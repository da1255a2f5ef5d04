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
#include "xorcomm/family.hpp"
#include "xorcomm/game.hpp"

namespace xorcomm {
namespace {

TEST(MakeXorGame, Chsh) {
  const RealMatrix pi = RealMatrix::from_rows({{.25, .25}, {.25, .25}});
  const RealMatrix f = RealMatrix::from_rows({{1, 1}, {1, -1}});
  const XorGame g = make_xor_game(pi, f);
  EXPECT_EQ(g.coefficients(), RealMatrix::from_rows({{.25, .25}, {.25, -.25}}));
  EXPECT_EQ(g.coefficients(), chsh_game().coefficients());
}

TEST(MakeXorGame, ZeroMassEntry) {
  const RealMatrix pi = RealMatrix::from_rows({{.5, 0}, {.25, .25}});
  const RealMatrix f = RealMatrix::from_rows({{1, -1}, {-1, 1}});
  const XorGame g = make_xor_game(pi, f);
  EXPECT_EQ(g.t(0, 1), 0.0);
}

TEST(MakeXorGame, FamilyGameN1) {
  // pi = 1/8 everywhere, f(x,z,y) = x z y.
  RealMatrix pi(4, 2, 1.0 / 8), f(4, 2);
  for (std::size_t xz = 0; xz < 4; ++xz)
    for (std::size_t y = 0; y < 2; ++y) {
      const int x = (xz & 1) ? 1 : -1, z = (xz & 2) ? 1 : -1, yy = y ? 1 : -1;
      f(xz, y) = x * z * yy;
    }
  const XorGame g = make_xor_game(pi, f);
  EXPECT_EQ(g.coefficients(), build_family_game(1).game.coefficients());
}

TEST(MakeXorGame, Errors) {
  const RealMatrix pi = RealMatrix::from_rows({{.25, .25}, {.25, .25}});
  EXPECT_THROW(make_xor_game(pi, RealMatrix(2, 3, 1.0)), InvalidInput);
  EXPECT_THROW(make_xor_game(RealMatrix::from_rows({{.5, .25}, {.25, .25}}), RealMatrix(2, 2, 1.0)), InvalidInput);
  EXPECT_THROW(make_xor_game(RealMatrix::from_rows({{1.5, -.5}, {0, 0}}), RealMatrix(2, 2, 1.0)), InvalidInput);
  EXPECT_THROW(make_xor_game(pi, RealMatrix::from_rows({{1, 0}, {1, 1}})), InvalidInput);
}

TEST(MakeXorGame, RecoversPiAndF) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RealMatrix pi(3, 4), f(3, 4);
  double total = 0.0;
  for (double& p : pi.mutable_data()) total += (p = u(rng));
  for (double& p : pi.mutable_data()) p /= total;
  for (double& s : f.mutable_data()) s = u(rng) < 0.5 ? -1.0 : 1.0;
  const XorGame g = make_xor_game(pi, f);
  for (std::size_t x = 0; x < 3; ++x)
    for (std::size_t y = 0; y < 4; ++y) {
      EXPECT_EQ(g.pi(x, y), pi(x, y));
      EXPECT_EQ(g.f(x, y), f(x, y));
    }
}

TEST(XorGame, RejectsUnnormalized) {
  EXPECT_THROW(XorGame::from_coefficients(RealMatrix(2, 2, 0.3)), InvalidInput);
  EXPECT_THROW(XorGame::from_coefficients(RealMatrix::from_rows({{NAN, 1.0}})), InvalidInput);
}

TEST(Normalize, Examples) {
  const NormalizedGame n = normalize_coefficients(RealMatrix::from_rows({{2, 0}, {0, 2}}));
  EXPECT_EQ(n.normalizer, 4.0);
  EXPECT_EQ(n.game.coefficients(), RealMatrix::from_rows({{.5, 0}, {0, .5}}));
  EXPECT_THROW(normalize_coefficients(RealMatrix(2, 2, 0.0)), InvalidInput);
}

TEST(Normalize, IdempotentAndHomogeneous) {
  std::mt19937_64 rng(5);
  const XorGame g = testing::random_game(rng, 4, 5);
  const NormalizedGame again = normalize_coefficients(g.coefficients());
  EXPECT_EQ(again.normalizer, 1.0);
  EXPECT_EQ(again.game.coefficients(), g.coefficients());

  RealMatrix scaled = g.coefficients();
  for (double& e : scaled.mutable_data()) e *= 3.7;
  const NormalizedGame s = normalize_coefficients(scaled);
  EXPECT_NEAR(s.normalizer, 3.7, 1e-12);
  for (std::size_t i = 0; i < 20; ++i) EXPECT_NEAR(s.game.coefficients().data()[i], g.coefficients().data()[i], 1e-15);
}

TEST(EvaluateCorrelation, Examples) {
  const XorGame g = chsh_game();
  EXPECT_EQ(evaluate_correlation(g, CorrelationMatrix(RealMatrix(2, 2, 0.0))), 0.0);
  RealMatrix signs(2, 2);
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y) signs(x, y) = g.f(x, y);
  EXPECT_DOUBLE_EQ(evaluate_correlation(g, CorrelationMatrix(signs)), 1.0);

  RealMatrix gamma(2, 2);
  const int t[2] = {1, 1}, s[2] = {1, -1};
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y) gamma(x, y) = t[x] * s[y];
  EXPECT_DOUBLE_EQ(evaluate_correlation(g, CorrelationMatrix(gamma)), 0.5);

  // Brute force over all 16 sign pairs: 0.5 is the maximum.
  double best = -1.0;
  for (int tb = 0; tb < 4; ++tb)
    for (int sb = 0; sb < 4; ++sb) {
      const int tt[2] = {tb & 1 ? -1 : 1, tb & 2 ? -1 : 1};
      const int ss[2] = {sb & 1 ? -1 : 1, sb & 2 ? -1 : 1};
      best = std::max(best, evaluate_signs(g, tt, ss));
    }
  EXPECT_DOUBLE_EQ(best, 0.5);
}

TEST(EvaluateCorrelation, BoundedOnRandomInputs) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const XorGame g = testing::random_sized_game(rng, 1, 6);
    RealMatrix gamma(g.x_count(), g.y_count());
    for (double& e : gamma.mutable_data()) e = u(rng);
    const double v = evaluate_correlation(g, CorrelationMatrix(gamma));
    EXPECT_LE(std::abs(v), 1.0 + 1e-12);
  }
  EXPECT_THROW(CorrelationMatrix(RealMatrix(1, 1, 1.5)), InvalidInput);
  EXPECT_THROW(evaluate_correlation(chsh_game(), CorrelationMatrix(RealMatrix(2, 3))), InvalidInput);
}

TEST(ClassicalOwStrategy, ValidateAndEvaluate) {
  ClassicalOwStrategy s{2, {1, 1}, {0, 1}, {1, 1, 1, -1}};
  EXPECT_NO_THROW(s.validate(2, 2));
  EXPECT_DOUBLE_EQ(evaluate_classical_ow(chsh_game(), s), 1.0);
  s.alice_msg[1] = 2;
  EXPECT_THROW(s.validate(2, 2), InvalidInput);
  s.alice_msg[1] = 1;
  s.bob_sign[0] = 0;
  EXPECT_THROW(s.validate(2, 2), InvalidInput);
}

TEST(Json, GameRoundTrip) {
  std::mt19937_64 rng(2);
  const XorGame g = testing::random_game(rng, 3, 4);
  const XorGame back = game_from_json(nlohmann::json::parse(game_to_json(g).dump()));
  EXPECT_EQ(back.coefficients(), g.coefficients());
  EXPECT_THROW(game_from_json(nlohmann::json::parse(R"({"x_count":2,"y_count":2,"t":[[1]]})")), InvalidInput);
  EXPECT_THROW(game_from_json(nlohmann::json::parse(R"({"t":[[1]]})")), InvalidInput);
}

TEST(Json, FamilySpec) {
  const XorGame g = game_from_spec(nlohmann::json::parse(R"({"family":"rademacher","n":1})"));
  EXPECT_EQ(g.coefficients(), build_family_game(1).game.coefficients());
  EXPECT_THROW(game_from_spec(nlohmann::json::parse(R"({"family":"gaussian","n":1})")), InvalidInput);
}

TEST(BellFunctional, IndexingAndJson) {
  BellFunctional b(2, 3, 4, 2);
  b(3, 1, 1, 2) = 0.5;
  EXPECT_EQ(b.coeffs()[((3 * 2 + 1) * 2 + 1) * 3 + 2], 0.5);
  const BellFunctional back = bell_from_json(nlohmann::json::parse(bell_to_json(b).dump()));
  EXPECT_EQ(back(3, 1, 1, 2), 0.5);
  EXPECT_THROW(BellFunctional(0, 1, 1, 1), InvalidInput);
}

TEST(SignOf, ZeroIsPositive) {
  EXPECT_EQ(sign_of(0.0), 1);
  EXPECT_EQ(sign_of(-0.0), 1);
  EXPECT_EQ(sign_of(-1e-300), -1);
}

}  // namespace
}  // namespace xorcomm
