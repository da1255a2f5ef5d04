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

#ifndef XORCOMM_LINALG_HPP
#define XORCOMM_LINALG_HPP

#include <complex>
#include <cstddef>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "json.hpp"

namespace xorcomm {

using cplx = std::complex<double>;

/// Dense row-major complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> data);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> diag);
  static ComplexMatrix from_real(const std::vector<std::vector<double>>& rows);
  /// |u><v|
  static ComplexMatrix outer(std::span<const cplx> u, std::span<const cplx> v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  cplx operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::span<const cplx> data() const { return data_; }
  std::span<cplx> data() { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cplx s);
  /// this += s * o
  void add_scaled(const ComplexMatrix& o, cplx s);

  cplx trace() const;
  double frobenius_norm() const;
  double max_abs() const;
  bool is_hermitian(double tol = 1e-12) const;
  bool all_finite() const;

  bool operator==(const ComplexMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, ComplexMatrix a);

/// tr(a b) without forming the product.
cplx trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// (a + a*)/2 and (a - a*)/(2i); both Hermitian, a = re + i*im.
ComplexMatrix hermitian_part(const ComplexMatrix& a);
ComplexMatrix antihermitian_part(const ComplexMatrix& a);

/// Eigen-decomposition of a Hermitian matrix: eigenvalues sorted descending,
/// eigenvectors stored as the columns of a unitary matrix.
struct HermitianEig {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;

  std::vector<cplx> vector(std::size_t i) const;
};

/// Cyclic Jacobi. Stops once the off-diagonal Frobenius norm drops below
/// offdiag_tol * ||h||_F, or after 100 sweeps. Throws InvalidInput on
/// non-square or non-Hermitian (beyond 1e-12 relative) input.
HermitianEig hermitian_eig(const ComplexMatrix& h, double offdiag_tol = 1e-13);

/// Singular values, descending. Computed from the Hermitian dilation
/// [[0, A], [A*, 0]], whose spectrum is {+-sigma_i}.
std::vector<double> singular_values(const ComplexMatrix& a);

struct SingularTriplet {
  double sigma = 0.0;
  std::vector<cplx> left;   // u, with a v = sigma u
  std::vector<cplx> right;  // v
};
SingularTriplet top_singular_triplet(const ComplexMatrix& a);

/// Sum of singular values. Throws InvalidInput for non-square input.
double trace_norm(const ComplexMatrix& a);
/// Largest singular value.
double operator_norm(const ComplexMatrix& a);

/// h = plus - minus with both parts positive semidefinite and
/// tr(plus) + tr(minus) = ||h||_1.
std::pair<ComplexMatrix, ComplexMatrix> pos_neg_split(const ComplexMatrix& h);

/// sum_i sign(lambda_i) v_i v_i*, eigenvalues within 1e-12 * max|lambda| of
/// zero contribute nothing.
ComplexMatrix sign_operator(const ComplexMatrix& h);

/// Contraction b (||b|| <= 1) with tr(b a) = ||a||_1: the adjoint of the
/// polar unitary factor, restricted to the support of a.
ComplexMatrix polar_contraction(const ComplexMatrix& a);

/// Standard-normal complex entries.
ComplexMatrix random_gaussian(std::size_t rows, std::size_t cols, std::mt19937_64& rng);
ComplexMatrix random_hermitian(std::size_t n, std::mt19937_64& rng);

/// Strategy for the one-way quantum value: R_x in the trace-norm ball and
/// B_y in the operator-norm ball, all d x d.
struct QuantumOwStrategy {
  std::size_t d = 1;
  std::vector<ComplexMatrix> r_list;
  std::vector<ComplexMatrix> b_list;
  bool selfadjoint = true;

  /// Throws InvalidInput when shapes or norm-ball constraints fail.
  void validate(double tol = 1e-10) const;
};

nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);
nlohmann::json quantum_strategy_to_json(const QuantumOwStrategy& s);
QuantumOwStrategy quantum_strategy_from_json(const nlohmann::json& j);

}  // namespace xorcomm

#endif  // XORCOMM_LINALG_HPP
