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

#include "xorcomm/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "xorcomm/solvers.hpp"

namespace xorcomm {

std::vector<std::int64_t> SignMatrix::gram() const {
  std::vector<std::int64_t> g(cols * cols, 0);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t a = 0; a < cols; ++a)
      for (std::size_t b = 0; b < cols; ++b) g[a * cols + b] += (*this)(r, a) * (*this)(r, b);
  return g;
}

SubspaceEmbedding subspace_embeddings(int n) {
  if (n < 1) throw InvalidInput("subspace_embeddings: n must be >= 1");
  if (n > kFamilyMaxN) throw GuardExceeded("subspace_embeddings: n exceeds the dense limit");
  const std::size_t nn = static_cast<std::size_t>(n);
  SubspaceEmbedding e;
  e.n = n;
  e.j1 = {std::size_t{1} << (2 * n), nn * nn, {}};
  e.j1.data.resize(e.j1.rows * e.j1.cols);
  for (std::size_t xz = 0; xz < e.j1.rows; ++xz)
    for (std::size_t i = 0; i < nn; ++i)
      for (std::size_t j = 0; j < nn; ++j) {
        const int xi = ((xz >> i) & 1) ? 1 : -1;
        const int zj = ((xz >> (nn + j)) & 1) ? 1 : -1;
        e.j1.data[xz * e.j1.cols + i * nn + j] = static_cast<std::int8_t>(xi * zj);
      }
  e.j2 = {std::size_t{1} << (n * n), nn * nn, {}};
  e.j2.data.resize(e.j2.rows * e.j2.cols);
  for (std::size_t y = 0; y < e.j2.rows; ++y)
    for (std::size_t ij = 0; ij < nn * nn; ++ij) e.j2.data[y * e.j2.cols + ij] = ((y >> ij) & 1) ? 1 : -1;
  return e;
}

RealMatrix embed_scaled_identity(const SubspaceEmbedding& e, std::uint64_t M) {
  RealMatrix g(e.j1.rows, e.j2.rows);
  const double inv = 1.0 / static_cast<double>(M);
  for (std::size_t r = 0; r < e.j1.rows; ++r)
    for (std::size_t c = 0; c < e.j2.rows; ++c) {
      int s = 0;
      for (std::size_t ij = 0; ij < e.j1.cols; ++ij) s += e.j1(r, ij) * e.j2(c, ij);
      g(r, c) = s * inv;
    }
  return g;
}

BlockNorm parse_block_norm(const std::string& name) {
  if (name == "operator") return BlockNorm::kOperator;
  if (name == "trace") return BlockNorm::kTrace;
  if (name == "abs-sum") return BlockNorm::kAbsSum;
  if (name == "sup-abs") return BlockNorm::kSupAbs;
  throw InvalidInput("unknown block norm: " + name);
}

double block_norm(const ComplexMatrix& m, BlockNorm sel) {
  switch (sel) {
    case BlockNorm::kOperator:
      return operator_norm(m);
    case BlockNorm::kTrace:
      return trace_norm(m);
    case BlockNorm::kAbsSum: {
      double s = 0.0;
      for (const cplx& c : m.data()) s += std::abs(c);
      return s;
    }
    case BlockNorm::kSupAbs:
      return m.max_abs();
  }
  return 0.0;
}

double l1_block_norm(const std::vector<ComplexMatrix>& blocks, BlockNorm sel) {
  if (blocks.empty()) throw InvalidInput("l1_block_norm: empty block list");
  for (const auto& b : blocks)
    if (b.rows() != blocks.front().rows() || b.cols() != blocks.front().cols())
      throw InvalidInput("l1_block_norm: blocks must share one shape");
  double s = 0.0;
  for (const auto& b : blocks) s += block_norm(b, sel);
  return s;
}

ReductionMap ReductionMap::identity(std::size_t n) {
  ReductionMap r;
  r.source_size = n;
  r.m = n;
  r.indices.resize(n);
  for (std::size_t i = 0; i < n; ++i) r.indices[i] = i;
  r.scales.assign(n, 1.0);
  return r;
}

bool ReductionMap::has_repeats() const {
  return std::set<std::size_t>(indices.begin(), indices.end()).size() != indices.size();
}

void ReductionMap::validate() const {
  if (indices.size() != m || scales.size() != m) throw InvalidInput("reduction map: size mismatch");
  for (std::size_t i : indices)
    if (i >= source_size) throw InvalidInput("reduction map: index out of range");
  for (double s : scales)
    if (!(s > 0.0) || !std::isfinite(s)) throw InvalidInput("reduction map: scales must be positive");
}

std::vector<ComplexMatrix> ReductionMap::apply(const std::vector<ComplexMatrix>& blocks) const {
  if (blocks.size() != source_size) throw InvalidInput("reduction map: block count does not match source size");
  std::vector<ComplexMatrix> out;
  out.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    ComplexMatrix b = blocks[indices[k]];
    b *= scales[k];
    out.push_back(std::move(b));
  }
  return out;
}

nlohmann::json reduction_map_to_json(const ReductionMap& r) {
  return {{"source_size", r.source_size}, {"m", r.m}, {"indices", r.indices}, {"scales", r.scales}, {"seed", r.seed}};
}

ReductionMap reduction_map_from_json(const nlohmann::json& j) {
  try {
    ReductionMap r;
    r.source_size = j.at("source_size").get<std::size_t>();
    r.m = j.at("m").get<std::size_t>();
    r.indices = j.at("indices").get<std::vector<std::size_t>>();
    r.scales = j.at("scales").get<std::vector<double>>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.validate();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("reduction map JSON: ") + e.what());
  }
}

ReductionMap sample_reduction_map(std::size_t source_size, std::size_t m, const std::vector<double>& weights,
                                  std::uint64_t seed) {
  if (m == 0) throw InvalidInput("sample_reduction_map: m must be >= 1");
  if (weights.size() != source_size) throw InvalidInput("sample_reduction_map: one weight per source index");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw InvalidInput("sample_reduction_map: weights must be nonnegative");
    total += w;
  }
  if (!(total > 0.0)) throw InvalidInput("sample_reduction_map: weights sum to zero");

  std::mt19937_64 rng(seed);
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
  ReductionMap r;
  r.source_size = source_size;
  r.m = m;
  r.seed = seed;
  r.indices.resize(m);
  r.scales.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t i = pick(rng);
    r.indices[k] = i;
    r.scales[k] = total / (static_cast<double>(m) * weights[i]);
  }
  return r;
}

std::vector<double> row_masses(const SignMatrix& s) {
  std::vector<double> w(s.rows, 0.0);
  for (std::size_t r = 0; r < s.rows; ++r)
    for (std::size_t c = 0; c < s.cols; ++c) w[r] += std::abs(s(r, c));
  return w;
}

std::vector<BlockVector> tensor_basis(const SignMatrix& s, std::size_t d) {
  std::vector<BlockVector> basis;
  for (std::size_t c = 0; c < s.cols; ++c)
    for (std::size_t p = 0; p < d; ++p)
      for (std::size_t q = 0; q < d; ++q) {
        BlockVector v(s.rows, ComplexMatrix(d, d));
        for (std::size_t r = 0; r < s.rows; ++r) v[r](p, q) = s(r, c);
        basis.push_back(std::move(v));
      }
  return basis;
}

DistortionReport verify_isomorphism(const ReductionMap& map, const std::vector<BlockVector>& basis, BlockNorm sel,
                                    double eps, int trials, std::uint64_t seed) {
  map.validate();
  if (basis.empty()) throw InvalidInput("verify_isomorphism: empty basis");
  if (trials < 1) throw InvalidInput("verify_isomorphism: trials must be >= 1");
  if (!(eps > 0.0)) throw InvalidInput("verify_isomorphism: eps must be positive");
  const std::size_t rows = basis.front().front().rows(), cols = basis.front().front().cols();
  for (const auto& b : basis)
    if (b.size() != map.source_size) throw InvalidInput("verify_isomorphism: basis element has the wrong block count");

  // ||J(e)|| = sum_k alpha_k ||e_{i_k}||, so only per-source multiplicities matter.
  std::vector<double> weight(map.source_size, 0.0);
  for (std::size_t k = 0; k < map.m; ++k) weight[map.indices[k]] += map.scales[k];

  DistortionReport rep;
  rep.trials = trials;
  rep.band_lo = 1.0 / std::sqrt(1.0 + eps);
  rep.band_hi = std::sqrt(1.0 + eps);
  std::vector<double> ratios(static_cast<std::size_t>(trials));
#pragma omp parallel for schedule(dynamic)
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(t));
    std::normal_distribution<double> normal;
    std::vector<cplx> coef(basis.size());
    for (auto& c : coef) c = cplx(normal(rng), normal(rng));
    double before = 0.0, after = 0.0;
    for (std::size_t i = 0; i < map.source_size; ++i) {
      ComplexMatrix block(rows, cols);
      for (std::size_t b = 0; b < basis.size(); ++b) block.add_scaled(basis[b][i], coef[b]);
      const double nb = block_norm(block, sel);
      before += nb;
      after += weight[i] * nb;
    }
    ratios[static_cast<std::size_t>(t)] = before > 0.0 ? after / before : 1.0;
  }

  rep.min = *std::min_element(ratios.begin(), ratios.end());
  rep.max = *std::max_element(ratios.begin(), ratios.end());
  double sum = 0.0;
  int pass = 0;
  for (double r : ratios) {
    sum += r;
    if (r >= rep.band_lo && r <= rep.band_hi) ++pass;
  }
  rep.mean = sum / trials;
  rep.pass_fraction = static_cast<double>(pass) / trials;
  return rep;
}

NormalizedGame apply_reduction(const RealMatrix& t, const ReductionMap& j1, const ReductionMap& j2) {
  j1.validate();
  j2.validate();
  if (j1.source_size != t.rows() || j2.source_size != t.cols())
    throw InvalidInput("apply_reduction: map sizes do not match the game");
  RealMatrix h(j1.m, j2.m);
  for (std::size_t k = 0; k < j1.m; ++k)
    for (std::size_t l = 0; l < j2.m; ++l) h(k, l) = j1.scales[k] * j2.scales[l] * t(j1.indices[k], j2.indices[l]);
  return normalize_coefficients(h);
}

GameValues evaluate_ow_values(const XorGame& g, std::size_t d, std::uint64_t seed, const ReductionOptions& opt) {
  GameValues v;
  const int k = static_cast<int>(d);
  if (ow_exact_feasible(g.x_count(), k, opt.exact_work)) {
    v.ow_classical = ow_classical_value_exact(g, k, opt.exact_work).value;
    v.ow_classical_exact = true;
  } else {
    v.ow_classical = ow_classical_value_local(g, k, opt.local_restarts, seed).value;
  }
  SeesawOptions so;
  so.restarts = opt.restarts;
  so.seed = seed;
  v.ow_quantum = ow_quantum_value_seesaw(g, d, true, so).value;
  v.quotient = v.ow_classical > 0.0 ? v.ow_quantum / v.ow_classical : 0.0;
  return v;
}

ReductionResult reduce_game(const FamilyGame& fg, std::size_t d, std::size_t m, std::uint64_t seed,
                            const ReductionOptions& opt) {
  const std::size_t xs = fg.game.x_count(), ys = fg.game.y_count();
  if (m < 1 || m > xs || m > ys)
    throw InvalidInput("reduce_game: m must satisfy 1 <= m <= min(2^{2n}, 2^{n^2}) = " +
                       std::to_string(std::min(xs, ys)));
  const SubspaceEmbedding e = subspace_embeddings(fg.n);
  ReductionMap j1 = m == xs ? ReductionMap::identity(xs) : sample_reduction_map(xs, m, row_masses(e.j1), seed);
  ReductionMap j2 = m == ys ? ReductionMap::identity(ys) : sample_reduction_map(ys, m, row_masses(e.j2), seed + 1);
  return reduce_game(fg, d, j1, j2, seed, opt);
}

ReductionResult reduce_game(const FamilyGame& fg, std::size_t d, const ReductionMap& j1, const ReductionMap& j2,
                            std::uint64_t seed, const ReductionOptions& opt) {
  if (d < 1) throw InvalidInput("reduce_game: d must be >= 1");
  NormalizedGame h = apply_reduction(fg.game.coefficients(), j1, j2);
  ReductionResult r{std::move(h.game), h.normalizer, j1, j2, {}, {}, 0.0, false, false, {}, {}};

  r.original = evaluate_ow_values(fg.game, d, seed, opt);
  r.sampled = evaluate_ow_values(r.reduced, d, seed, opt);
  r.quotient_ratio = r.original.quotient > 0.0 ? r.sampled.quotient / r.original.quotient : 0.0;
  r.within_band = r.quotient_ratio >= 4.0 / 9.0 && r.quotient_ratio <= 9.0 / 4.0;
  // The quantum values are see-saw lower bounds, so the comparison is never
  // fully certified.
  r.certified = false;

  const SubspaceEmbedding e = subspace_embeddings(fg.n);
  r.distortion1 = verify_isomorphism(j1, tensor_basis(e.j1, d), opt.norm, opt.eps, opt.trials, seed);
  r.distortion2 = verify_isomorphism(j2, tensor_basis(e.j2, d), opt.norm, opt.eps, opt.trials, seed + 1);
  return r;
}

}  // namespace xorcomm
