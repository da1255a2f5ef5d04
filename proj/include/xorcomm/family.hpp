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

// The Rademacher game family G_n and the Khintchine-type estimates used to
// bound its values.
//
// Index encoding: an Alice input (x, z) in {+-1}^n x {+-1}^n is a 2n-bit word
// whose low n bits hold x and next n bits hold z; a Bob input y in
// {+-1}^{n x n} is an n^2-bit word, row-major in (i, j). Bit 1 means +1.

#ifndef XORCOMM_FAMILY_HPP
#define XORCOMM_FAMILY_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "xorcomm/game.hpp"
#include "xorcomm/linalg.hpp"

namespace xorcomm {

inline constexpr int kFamilyMaxN = 4;

struct FamilyGame {
  int n = 1;
  XorGame game;
  std::uint64_t m_normalizer = 0;  // M
};

/// sum_{i,j} x_i z_j y_{i,j} for packed indices.
int family_coefficient(int n, std::uint64_t xz, std::uint64_t y);

/// Exact M = sum over all (x, z, y) of |sum_{i,j} x_i z_j y_{i,j}|.
std::uint64_t compute_M(int n);

FamilyGame build_family_game(int n);

/// Bounds n 2^{n^2+2n} / sqrt 2 <= M <= n 2^{n^2+2n}, checked in
/// exact arithmetic (the lower one as 2 M^2 >= (n 2^{n^2+2n})^2).
bool family_M_within_bounds(int n, std::uint64_t m);

/// The +-1 matrix A_y with entries y_{i,j}.
RealMatrix family_sign_matrix(int n, std::uint64_t y);

struct FamilyStrategy {
  QuantumOwStrategy strategy;  // general (non-Hermitian), d = n
  double value = 0.0;          // sum T tr(B_y R_x), evaluated directly
  double closed_form = 0.0;    // (2^{2n} n / M) sum_y 1/||A_y||
};

/// R_(x,z) = |phi_x><phi_z| with phi_x = n^{-1/2} sum_i x_i |i>, and
/// B_y = A_y^T / ||A_y||. The transpose makes tr(B_y R) = (1/n) sum x_i y_ij z_j.
FamilyStrategy family_quantum_strategy(int n);

struct SplitResult {
  QuantumOwStrategy strategy;  // self-adjoint
  double value = 0.0;
  int r_part = 0;  // 0 = Hermitian part, 1 = anti-Hermitian part (times -i)
  int b_part = 0;
};

/// Best of the four (Re/Im) x (Re/Im) Hermitian component strategies, with the
/// R's negated if needed to make the value nonnegative. Since the real part of
/// the original value is v11 - v22, the result is >= |Re v| / 2.
SplitResult selfadjoint_split(const RealMatrix& t, const QuantumOwStrategy& s);

struct KhintchineBound {
  double value = 0.0;
  bool vacuous = false;  // value >= 1, so it says nothing about a bias
};

/// (2 sqrt 2 e^2 / n) ln k. Requires k >= e^2, i.e. k >= 8.
KhintchineBound khintchine_upper_bound(int n, int k);

/// E |sum_i alpha_i r_i| by enumeration of {+-1}^n.
double rademacher_mean_abs(std::span<const double> alpha);
/// E |sum_{i,j} alpha_{ij} r_i(w) r_j(w')| by enumeration of {+-1}^n x {+-1}^n.
double double_rademacher_mean_abs(const RealMatrix& alpha);

struct KhintchineReport {
  int n = 0;
  int trials = 0;
  // E|.| / ||alpha||_2; the constants a_1 = sqrt 2, b_1 = 1 give [1/sqrt 2, 1]
  // for the single form and [1/2, 1] for the double form.
  double single_min = 0.0, single_max = 0.0;
  double double_min = 0.0, double_max = 0.0;
  bool double_checked = false;
  double single_slack = 0.0;  // min distance inside the band (negative = violation)
  double double_slack = 0.0;
};

inline constexpr int kKhintchineSingleMaxN = 16;
inline constexpr int kKhintchineDoubleMaxN = 8;

/// Standard-normal coefficient vectors; the double form runs when
/// n <= double_max_n.
KhintchineReport khintchine_empirical(int n, int trials, std::uint64_t seed, int double_max_n = 4);

struct LatalaEstimate {
  double mean_norm = 0.0;
  double ratio = 0.0;  // mean_norm / sqrt n
  bool exact = false;
  int samples = 0;
};

/// Mean operator norm of a uniform +-1 n x n matrix: exact for n <= 2,
/// Monte Carlo otherwise.
LatalaEstimate latala_estimate(int n, int samples, std::uint64_t seed);

/// Largest singular value of a real matrix by power iteration on A^T A.
double real_operator_norm(const RealMatrix& a);

/// Loads {"family": "rademacher", "n": N} or a plain game object.
XorGame game_from_spec(const nlohmann::json& j);

}  // namespace xorcomm

#endif  // XORCOMM_FAMILY_HPP
