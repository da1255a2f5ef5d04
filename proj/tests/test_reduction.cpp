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

#include "xorcomm/reduction.hpp"
#include "xorcomm/solvers.hpp"

namespace xorcomm {
namespace {

TEST(Embeddings, N1Rows) {
  const SubspaceEmbedding e = subspace_embeddings(1);
  ASSERT_EQ(e.j1.rows, 4u);
  ASSERT_EQ(e.j1.cols, 1u);
  // xz = 0: x = -1, z = -1; xz = 1: x = +1, z = -1
  EXPECT_EQ(e.j1(0, 0), 1);
  EXPECT_EQ(e.j1(1, 0), -1);
  EXPECT_EQ(e.j1(2, 0), -1);
  EXPECT_EQ(e.j1(3, 0), 1);
  EXPECT_EQ(e.j2(0, 0), -1);
  EXPECT_EQ(e.j2(1, 0), 1);
}

TEST(Embeddings, GramMatricesAreScaledIdentity) {
  for (int n = 1; n <= 3; ++n) {
    const SubspaceEmbedding e = subspace_embeddings(n);
    const std::size_t nn = static_cast<std::size_t>(n * n);
    const auto g1 = e.j1.gram(), g2 = e.j2.gram();
    for (std::size_t a = 0; a < nn; ++a)
      for (std::size_t b = 0; b < nn; ++b) {
        EXPECT_EQ(g1[a * nn + b], a == b ? std::int64_t{1} << (2 * n) : 0);
        EXPECT_EQ(g2[a * nn + b], a == b ? std::int64_t{1} << (n * n) : 0);
      }
  }
}

TEST(Embeddings, ScaledIdentityIsTheFamilyGame) {
  for (int n = 1; n <= 2; ++n) {
    const FamilyGame fg = build_family_game(n);
    const RealMatrix g = embed_scaled_identity(subspace_embeddings(n), fg.m_normalizer);
    ASSERT_EQ(g.rows(), fg.game.x_count());
    ASSERT_EQ(g.cols(), fg.game.y_count());
    for (std::size_t i = 0; i < g.data().size(); ++i) EXPECT_EQ(g.data()[i], fg.game.coefficients().data()[i]);
  }
  const FamilyGame fg3 = build_family_game(3);
  const RealMatrix g3 = embed_scaled_identity(subspace_embeddings(3), fg3.m_normalizer);
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<std::size_t> xs(0, 63), ys(0, 511);
  for (int s = 0; s < 500; ++s) {
    const std::size_t x = xs(rng), y = ys(rng);
    EXPECT_EQ(g3(x, y), fg3.game.t(x, y));
  }
}

TEST(BlockNorms, L1Examples) {
  const ComplexMatrix a = ComplexMatrix::from_real({{3, 0}, {0, -4}});
  const ComplexMatrix b = ComplexMatrix::from_real({{0, 1}, {0, 0}});
  EXPECT_NEAR(l1_block_norm({a, b}, BlockNorm::kOperator), 5.0, 1e-12);
  EXPECT_NEAR(l1_block_norm({a, b}, BlockNorm::kTrace), 8.0, 1e-12);
  EXPECT_NEAR(l1_block_norm({a, b}, BlockNorm::kAbsSum), 8.0, 1e-12);
  EXPECT_NEAR(l1_block_norm({a, b}, BlockNorm::kSupAbs), 5.0, 1e-12);
  EXPECT_THROW(l1_block_norm({}, BlockNorm::kOperator), InvalidInput);
  EXPECT_THROW(l1_block_norm({a, ComplexMatrix(3, 3)}, BlockNorm::kOperator), InvalidInput);
  EXPECT_EQ(parse_block_norm("abs-sum"), BlockNorm::kAbsSum);
  EXPECT_THROW(parse_block_norm("frobenius"), InvalidInput);
}

TEST(ReductionMapTest, SamplingIsUnbiased) {
  const std::vector<double> weights = {1, 2, 3, 4, 10};
  const std::vector<double> v = {0.5, -1.0, 2.0, 0.25, 1.0};
  const double exact = 0.5 + 1.0 + 2.0 + 0.25 + 1.0;  // sum |v_i|
  const int resamples = 10000;
  double mean = 0.0;
  for (int s = 0; s < resamples; ++s) {
    const ReductionMap r = sample_reduction_map(5, 3, weights, s);
    double est = 0.0;
    for (std::size_t k = 0; k < r.m; ++k) est += r.scales[k] * std::abs(v[r.indices[k]]);
    mean += est / resamples;
  }
  EXPECT_NEAR(mean, exact, 0.05 * exact);
}

TEST(ReductionMapTest, ScalesMatchWeights) {
  const std::vector<double> weights = {1, 3};
  const ReductionMap r = sample_reduction_map(2, 4, weights, 7);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_DOUBLE_EQ(r.scales[k], 4.0 / (4.0 * weights[r.indices[k]]));
  EXPECT_THROW(sample_reduction_map(2, 0, weights, 0), InvalidInput);
  EXPECT_THROW(sample_reduction_map(2, 1, {0, 0}, 0), InvalidInput);
  EXPECT_THROW(sample_reduction_map(3, 1, weights, 0), InvalidInput);
}

TEST(ReductionMapTest, JsonRoundTrip) {
  const ReductionMap r = sample_reduction_map(16, 6, std::vector<double>(16, 1.0), 3);
  const ReductionMap back = reduction_map_from_json(reduction_map_to_json(r));
  EXPECT_EQ(back.indices, r.indices);
  EXPECT_EQ(back.scales, r.scales);
  EXPECT_EQ(back.m, r.m);
  EXPECT_EQ(back.source_size, r.source_size);
  EXPECT_EQ(back.seed, r.seed);
}

TEST(ReductionMapTest, ValidateRejects) {
  ReductionMap r = ReductionMap::identity(3);
  EXPECT_NO_THROW(r.validate());
  EXPECT_FALSE(r.has_repeats());
  r.indices[0] = 3;
  EXPECT_THROW(r.validate(), InvalidInput);
  r.indices[0] = 1;
  EXPECT_TRUE(r.has_repeats());
  r.scales[2] = 0.0;
  EXPECT_THROW(r.validate(), InvalidInput);
}

TEST(VerifyIsomorphism, IdentityMapIsExact) {
  const SubspaceEmbedding e = subspace_embeddings(2);
  const DistortionReport rep =
      verify_isomorphism(ReductionMap::identity(16), tensor_basis(e.j1, 2), BlockNorm::kOperator, 0.5, 20, 1);
  EXPECT_NEAR(rep.min, 1.0, 1e-12);
  EXPECT_NEAR(rep.max, 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(rep.pass_fraction, 1.0);
}

TEST(VerifyIsomorphism, AggregatedWeightsMatchMaterializedMap) {
  const SubspaceEmbedding e = subspace_embeddings(1);
  const ReductionMap r = sample_reduction_map(4, 6, row_masses(e.j1), 4);
  const auto basis = tensor_basis(e.j1, 2);
  const DistortionReport rep = verify_isomorphism(r, basis, BlockNorm::kTrace, 0.5, 1, 9);
  // Rebuild trial 0 directly from J(e).
  std::mt19937_64 rng(9);
  std::normal_distribution<double> normal;
  std::vector<cplx> coef(basis.size());
  for (auto& c : coef) c = cplx(normal(rng), normal(rng));
  BlockVector v(4, ComplexMatrix(2, 2));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t b = 0; b < basis.size(); ++b) v[i].add_scaled(basis[b][i], coef[b]);
  const double ratio = l1_block_norm(r.apply(v), BlockNorm::kTrace) / l1_block_norm(v, BlockNorm::kTrace);
  EXPECT_NEAR(rep.min, ratio, 1e-12);
}

TEST(ReduceGame, IdentityReductionIsExact) {
  const FamilyGame fg = build_family_game(1);
  ReductionOptions opt;
  opt.restarts = 4;
  opt.trials = 10;
  const ReductionResult r = reduce_game(fg, 2, ReductionMap::identity(4), ReductionMap::identity(2), 0, opt);
  EXPECT_EQ(r.normalizer, 1.0);
  EXPECT_EQ(r.reduced.coefficients(), fg.game.coefficients());
  EXPECT_NEAR(r.quotient_ratio, 1.0, 1e-9);
  EXPECT_TRUE(r.within_band);
}

TEST(ReduceGame, SampledGameIsNormalized) {
  const FamilyGame fg = build_family_game(2);
  ReductionOptions opt;
  opt.restarts = 4;
  opt.local_restarts = 16;
  opt.trials = 20;
  const ReductionResult r = reduce_game(fg, 2, 12, 5, opt);
  EXPECT_EQ(r.reduced.x_count(), 12u);
  EXPECT_EQ(r.reduced.y_count(), 12u);
  double mass = 0.0;
  for (double c : r.reduced.coefficients().data()) mass += std::abs(c);
  EXPECT_NEAR(mass, 1.0, 1e-12);
  EXPECT_GT(r.normalizer, 0.0);
  EXPECT_FALSE(r.certified);
  EXPECT_EQ(r.original.ow_classical_exact, ow_exact_feasible(16, 2, opt.exact_work));
  EXPECT_TRUE(r.sampled.ow_classical_exact);  // 4^12 <= 2^24
  EXPECT_THROW(reduce_game(fg, 2, 17, 0, opt), InvalidInput);
  EXPECT_THROW(reduce_game(fg, 2, 0, 0, opt), InvalidInput);
}

}  // namespace
}  // namespace xorcomm
