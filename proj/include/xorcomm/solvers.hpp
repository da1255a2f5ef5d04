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

// Classical and quantum values of XOR games, with and without one-way
// communication. Exact solvers enumerate extreme points; the see-saw and
// local-search solvers return certified lower bounds (their certificates are
// feasible strategies).
//
// All kernels parallelize over fixed-size work units (enumeration chunks or
// restarts) whose layout does not depend on the thread count, and combine the
// per-unit maxima in index order. Results are therefore bit-identical for any
// number of OpenMP threads.

#ifndef XORCOMM_SOLVERS_HPP
#define XORCOMM_SOLVERS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "xorcomm/game.hpp"
#include "xorcomm/linalg.hpp"

namespace xorcomm {

/// Unit vectors u_x, v_y realizing sum T_{x,y} <u_x, v_y>.
struct VectorStrategy {
  std::size_t dim = 1;
  std::vector<std::vector<double>> u_list;
  std::vector<std::vector<double>> v_list;
};

/// Optimal +-1 signs for the no-communication classical value.
struct SignCertificate {
  std::vector<int> t;  // per x
  std::vector<int> s;  // per y
};

/// Deterministic Bell strategy: output per input for each party, plus the
/// overall orientation (+1 or -1) that realizes the absolute value.
struct BellCertificate {
  std::vector<int> alice_output;  // per x
  std::vector<int> bob_output;    // per y
  int orientation = 1;
};

using Certificate = std::variant<std::monostate, SignCertificate, ClassicalOwStrategy, QuantumOwStrategy,
                                 VectorStrategy, BellCertificate>;

struct SolveReport {
  double value = 0.0;
  Certificate certificate;
  bool exact = false;
  int restarts_used = 0;
  std::uint64_t iterations = 0;  // see-saw iterations / enumerated configurations
  std::uint64_t seed = 0;
  double elapsed_seconds = 0.0;
  std::vector<double> objective_trace;  // best run, one entry per half-step
};

struct SeesawOptions {
  int restarts = 64;
  double tol = 1e-10;
  std::uint64_t seed = 0;
  int max_iterations = 10000;
};

inline constexpr std::uint64_t kClassicalGuard = std::uint64_t{1} << 26;
inline constexpr std::uint64_t kOwClassicalGuard = std::uint64_t{1} << 32;
inline constexpr std::uint64_t kBellGuard = std::uint64_t{1} << 26;

inline constexpr int kDefaultVectorRestarts = 32;
inline constexpr int kDefaultOperatorRestarts = 64;
inline constexpr int kDefaultLocalRestarts = 256;

// --- no communication ------------------------------------------------------

/// max over t in {+-1}^X of sum_y |sum_x t_x T_{x,y}|. Requires
/// 2^{x_count} <= guard.
SolveReport classical_value_exact(const XorGame& g, std::uint64_t guard = kClassicalGuard);
SolveReport classical_value_exact(const RealMatrix& t, std::uint64_t guard = kClassicalGuard);

/// Tsirelson vector see-saw in R^dim; lower bound on the quantum value.
SolveReport quantum_value_seesaw(const XorGame& g, std::size_t dim, const SeesawOptions& opt);
SolveReport quantum_value_seesaw(const RealMatrix& t, std::size_t dim, const SeesawOptions& opt);

// --- one-way classical communication ----------------------------------------

/// Exact value with a k-letter message alphabet. Requires (2k)^{x_count} <= guard.
SolveReport ow_classical_value_exact(const XorGame& g, int k, std::uint64_t guard = kOwClassicalGuard);
SolveReport ow_classical_value_exact(const RealMatrix& t, int k, std::uint64_t guard = kOwClassicalGuard);

/// Exact-coordinate ascent over (sign, message) per x; lower bound.
SolveReport ow_classical_value_local(const XorGame& g, int k, int restarts, std::uint64_t seed);
SolveReport ow_classical_value_local(const RealMatrix& t, int k, int restarts, std::uint64_t seed);

/// Whether ow_classical_value_exact would accept (k, x_count) under guard.
bool ow_exact_feasible(std::size_t x_count, int k, std::uint64_t guard = kOwClassicalGuard);

// --- one-way quantum communication -------------------------------------------

/// Operator see-saw for sup |sum T tr(B_y R_x)| over d x d matrices with
/// ||R_x||_1 <= 1 and ||B_y|| <= 1; Hermitian when selfadjoint. The optional
/// warm start is run first (index 0) ahead of the random restarts.
SolveReport ow_quantum_value_seesaw(const XorGame& g, std::size_t d, bool selfadjoint, const SeesawOptions& opt,
                                    const QuantumOwStrategy* warm_start = nullptr);
SolveReport ow_quantum_value_seesaw(const RealMatrix& t, std::size_t d, bool selfadjoint,
                                    const SeesawOptions& opt, const QuantumOwStrategy* warm_start = nullptr);

/// Embeds a classical protocol with k <= d messages as diagonal matrices:
/// R_x = a(x)|m(x)><m(x)|, B_y = diag(b(y, .)).
QuantumOwStrategy diagonal_embedding(const ClassicalOwStrategy& s, std::size_t d);

// --- Bell functionals ----------------------------------------------------------

/// max over deterministic strategies of |<B, P>|. Requires
/// a_count^{x_count} <= guard.
SolveReport bell_classical_value_exact(const BellFunctional& b, std::uint64_t guard = kBellGuard);

// --- distributional complexity ---------------------------------------------------

struct DistributionalComplexity {
  std::optional<int> messages;  // smallest k, if any k <= k_max works
  double bits = 0.0;            // log2(messages)
  bool heuristic = false;       // some value came from local search
  std::vector<double> values;   // omega_{o.w.-log k} for k = 1, 2, ...
};

/// Smallest k <= k_max with omega_{o.w.-log k}(G) >= 2 eps.
DistributionalComplexity distributional_complexity_ow(const XorGame& g, double eps, int k_max,
                                                      std::uint64_t guard = kOwClassicalGuard,
                                                      int local_restarts = kDefaultLocalRestarts,
                                                      std::uint64_t seed = 0);

// --- certificate evaluation -----------------------------------------------------

/// sum_{x,y} T_{x,y} tr(B_y R_x).
cplx evaluate_quantum_ow(const RealMatrix& t, const QuantumOwStrategy& s);
double evaluate_vectors(const RealMatrix& t, const VectorStrategy& s);
double evaluate_bell_deterministic(const BellFunctional& b, const BellCertificate& c);

/// Re-evaluates a report's certificate against the coefficient matrix.
double replay_certificate(const RealMatrix& t, const SolveReport& r);

nlohmann::json certificate_to_json(const Certificate& c);

}  // namespace xorcomm

#endif  // XORCOMM_SOLVERS_HPP
