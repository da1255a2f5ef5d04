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

// Bell functional lift of an XOR game and the teleportation strategy that
// turns a one-way quantum protocol into a Bell violation.
//
// Index bookkeeping for the lift with parameter D:
//   Alice input  x                          (same as the game)
//   Alice output (a, s) in [D] x {+1, -1}   -> 2 a + (s == +1 ? 0 : 1)
//   Bob input    (y, k) in Y x [D]          -> y D + k
//   Bob output   b in {+1, -1}              -> b == +1 ? 0 : 1
// Weyl unitaries W_{k,j} (1-based k, j in 1..d) are stored at
// a = d (k - 1) + (j - 1).

#ifndef XORCOMM_BELL_LIFT_HPP
#define XORCOMM_BELL_LIFT_HPP

#include <array>
#include <cstddef>
#include <vector>

#include "xorcomm/game.hpp"
#include "xorcomm/linalg.hpp"

namespace xorcomm {

inline std::size_t lift_alice_output(std::size_t a, int s) { return 2 * a + (s > 0 ? 0 : 1); }
inline std::size_t lift_bob_input(std::size_t y, std::size_t k, std::size_t D) { return y * D + k; }
inline std::size_t lift_bob_output(int b) { return b > 0 ? 0 : 1; }

/// B(a, s, b, x, y, k) = T_{x,y} [a == k] s b, with D = lift size.
BellFunctional build_lifted_functional(const XorGame& g, std::size_t D);

struct WeylSet {
  std::size_t d = 1;
  std::vector<ComplexMatrix> unitaries;  // d^2 entries

  /// W_{k,j} with 1-based k, j.
  const ComplexMatrix& at(std::size_t k, std::size_t j) const { return unitaries[d * (k - 1) + (j - 1)]; }
};

/// u_j |l> = e^{2 pi i j l / d} |l>, v_k |l> = |l + k mod d>, W_{k,j} = v_k u_j.
WeylSet weyl_unitaries(std::size_t d);

/// max-abs entry of (1/d) sum_a W_a A W_a^* - tr(A) I.
double weyl_completeness_error(const WeylSet& w, const ComplexMatrix& a);

struct LiftedStrategy {
  std::size_t d = 1;
  /// alice_povms[x][lift_alice_output(a, s)], a in [d^2].
  std::vector<std::vector<ComplexMatrix>> alice_povms;
  /// bob_povms[lift_bob_input(y, k, d^2)][lift_bob_output(b)].
  std::vector<std::array<ComplexMatrix, 2>> bob_povms;
  /// Maximally entangled state, index i d + j for |i>|j>.
  std::vector<cplx> state;
  /// The one-way strategy after rescaling each R_x to trace norm 1.
  QuantumOwStrategy effective;

  /// Throws std::logic_error unless every element is PSD (eigenvalues
  /// >= -tol ||E||), each POVM sums to the identity within tol, and the state
  /// is normalized.
  void validate(double tol = 1e-10) const;
};

/// Teleportation construction for a self-adjoint strategy of dimension d.
/// The matching functional is build_lifted_functional(g, d * d).
LiftedStrategy teleportation_strategy(const XorGame& g, const QuantumOwStrategy& s);

/// sum B_{a,b,x,y} <psi| E_x^a (x) P_y^b |psi>.
double evaluate_bell(const BellFunctional& b, const LiftedStrategy& ls);

}  // namespace xorcomm

#endif  // XORCOMM_BELL_LIFT_HPP
