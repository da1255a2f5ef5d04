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

// Input reduction for the family game: the embeddings j1, j2, sampled
// coordinate maps J(v) = (alpha_1 v_{i_1}, ..., alpha_m v_{i_m}), and the
// reduced game H = (J1 (x) J2)(G) / N.

#ifndef XORCOMM_REDUCTION_HPP
#define XORCOMM_REDUCTION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "xorcomm/family.hpp"
#include "xorcomm/game.hpp"
#include "xorcomm/linalg.hpp"

namespace xorcomm {

/// Dense +-1 matrix.
struct SignMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<std::int8_t> data;

  int operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  /// A^T A in exact integer arithmetic, row-major cols x cols.
  std::vector<std::int64_t> gram() const;
};

struct SubspaceEmbedding {
  int n = 1;
  SignMatrix j1;  // 2^{2n} x n^2, j1[(x,z)][(i,j)] = x_i z_j
  SignMatrix j2;  // 2^{n^2} x n^2, j2[y][(i,j)] = y_{i,j}
};

SubspaceEmbedding subspace_embeddings(int n);

/// (j1 (x) j2)(I / M), i.e. entry [(x,z)][y] = (1/M) sum_{ij} j1[(x,z)][ij] j2[y][ij].
RealMatrix embed_scaled_identity(const SubspaceEmbedding& e, std::uint64_t M);

enum class BlockNorm { kOperator, kTrace, kAbsSum, kSupAbs };
BlockNorm parse_block_norm(const std::string& name);
double block_norm(const ComplexMatrix& m, BlockNorm sel);
/// sum_i ||blocks_i||
double l1_block_norm(const std::vector<ComplexMatrix>& blocks, BlockNorm sel);

struct ReductionMap {
  std::size_t source_size = 0;
  std::size_t m = 0;
  std::vector<std::size_t> indices;
  std::vector<double> scales;
  std::uint64_t seed = 0;

  static ReductionMap identity(std::size_t n);
  bool has_repeats() const;
  /// Throws InvalidInput when indices are out of range or scales are not positive.
  void validate() const;
  /// (alpha_k blocks[i_k])_k
  std::vector<ComplexMatrix> apply(const std::vector<ComplexMatrix>& blocks) const;
};

nlohmann::json reduction_map_to_json(const ReductionMap& r);
ReductionMap reduction_map_from_json(const nlohmann::json& j);

/// i.i.d. indices with p_i = w_i / sum w and scales 1 / (m p_i).
ReductionMap sample_reduction_map(std::size_t source_size, std::size_t m, const std::vector<double>& weights,
                                  std::uint64_t seed);

/// Row l1 masses of a sign matrix, the sampling weights for its span.
std::vector<double> row_masses(const SignMatrix& s);

struct DistortionReport {
  int trials = 0;
  double min = 0.0, max = 0.0, mean = 0.0;
  double band_lo = 0.0, band_hi = 0.0;  // [1/sqrt(1+eps), sqrt(1+eps)]
  double pass_fraction = 0.0;
};

/// A block vector: one matrix per source coordinate.
using BlockVector = std::vector<ComplexMatrix>;

/// Ratios ||(J (x) id)(e)|| / ||e|| for random complex Gaussian combinations e
/// of the basis; trial t uses seed + t.
DistortionReport verify_isomorphism(const ReductionMap& map, const std::vector<BlockVector>& basis, BlockNorm sel,
                                    double eps, int trials, std::uint64_t seed);

/// Basis of span(columns of s) (x) M_d: column c times each matrix unit.
std::vector<BlockVector> tensor_basis(const SignMatrix& s, std::size_t d);

struct ReductionOptions {
  int restarts = 16;             // operator see-saw restarts
  int local_restarts = 64;       // classical local search restarts
  std::uint64_t exact_work = std::uint64_t{1} << 24;  // exact ow only below this
  int trials = 200;              // distortion trials
  double eps = 0.5;
  BlockNorm norm = BlockNorm::kOperator;
};

struct GameValues {
  double ow_classical = 0.0;
  bool ow_classical_exact = false;
  double ow_quantum = 0.0;  // see-saw lower bound
  double quotient = 0.0;    // ow_quantum / ow_classical
};

struct ReductionResult {
  XorGame reduced;
  double normalizer = 0.0;  // N = sum |H|
  ReductionMap j1, j2;
  GameValues original, sampled;
  double quotient_ratio = 0.0;  // sampled.quotient / original.quotient
  bool within_band = false;     // 4/9 <= quotient_ratio <= 9/4
  bool certified = false;       // all four values exact
  DistortionReport distortion1, distortion2;
};

/// Samples J1 over Alice inputs and J2 over Bob inputs with m entries each and
/// evaluates both games at message dimension d. Requires m <= 2^{2n} and
/// m <= 2^{n^2}; a side whose source size equals m uses the identity map.
ReductionResult reduce_game(const FamilyGame& fg, std::size_t d, std::size_t m, std::uint64_t seed,
                            const ReductionOptions& opt = {});
/// Same with explicit maps.
ReductionResult reduce_game(const FamilyGame& fg, std::size_t d, const ReductionMap& j1, const ReductionMap& j2,
                            std::uint64_t seed, const ReductionOptions& opt = {});

/// H = (J1 (x) J2)(t), normalized.
NormalizedGame apply_reduction(const RealMatrix& t, const ReductionMap& j1, const ReductionMap& j2);

/// omega_{o.w.-log d} (exact when the work fits, local search otherwise) and
/// the self-adjoint operator see-saw at dimension d.
GameValues evaluate_ow_values(const XorGame& g, std::size_t d, std::uint64_t seed, const ReductionOptions& opt);

}  // namespace xorcomm

#endif  // XORCOMM_REDUCTION_HPP
