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

#include "xorcomm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "xorcomm/game.hpp"

namespace xorcomm {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) throw InvalidInput("ComplexMatrix: data size does not match shape");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> diag) {
  ComplexMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::from_real(const std::vector<std::vector<double>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows.front().size() : 0;
  ComplexMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw InvalidInput("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const cplx> u, std::span<const cplx> v) {
  ComplexMatrix m(u.size(), v.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = u[i] * std::conj(v[j]);
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix m = *this;
  for (auto& e : m.data_) e = std::conj(e);
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  if (o.rows_ != rows_ || o.cols_ != cols_) throw InvalidInput("matrix shape mismatch in +=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  if (o.rows_ != rows_ || o.cols_ != cols_) throw InvalidInput("matrix shape mismatch in -=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (auto& e : data_) e *= s;
  return *this;
}

void ComplexMatrix::add_scaled(const ComplexMatrix& o, cplx s) {
  if (o.rows_ != rows_ || o.cols_ != cols_) throw InvalidInput("matrix shape mismatch in add_scaled");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += s * o.data_[i];
}

cplx ComplexMatrix::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& e : data_) s += std::norm(e);
  return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& e : data_) m = std::max(m, std::abs(e));
  return m;
}

bool ComplexMatrix::is_hermitian(double tol) const {
  if (!is_square()) return false;
  const double scale = std::max(1.0, max_abs());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i; j < cols_; ++j)
      if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol * scale) return false;
  return true;
}

bool ComplexMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const cplx& e) { return std::isfinite(e.real()) && std::isfinite(e.imag()); });
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw InvalidInput("matrix shape mismatch in product");
  ComplexMatrix m(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) m(i, j) += aik * b(k, j);
    }
  return m;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

cplx trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) throw InvalidInput("shape mismatch in trace_product");
  cplx t = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) t += a(i, k) * b(k, i);
  return t;
}

ComplexMatrix hermitian_part(const ComplexMatrix& a) {
  ComplexMatrix m = a + a.adjoint();
  return m *= 0.5;
}

ComplexMatrix antihermitian_part(const ComplexMatrix& a) {
  ComplexMatrix m = a - a.adjoint();
  return m *= cplx(0.0, -0.5);
}

std::vector<cplx> HermitianEig::vector(std::size_t i) const {
  std::vector<cplx> v(eigenvectors.rows());
  for (std::size_t r = 0; r < v.size(); ++r) v[r] = eigenvectors(r, i);
  return v;
}

namespace {

constexpr int kMaxSweeps = 100;

double offdiagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// Applies A <- G* A G and V <- V G for the unitary G acting on coordinates
// (p, q) that annihilates A(p, q).
void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
  const cplx apq = a(p, q);
  const double r = std::abs(apq);
  if (r == 0.0) return;
  const cplx e = apq / r;
  const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * r);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  const cplx se = s * e;
  const cplx sec = s * std::conj(e);
  const std::size_t n = a.rows();

  for (std::size_t i = 0; i < n; ++i) {
    const cplx aip = a(i, p), aiq = a(i, q);
    a(i, p) = c * aip - sec * aiq;
    a(i, q) = se * aip + c * aiq;
  }
  for (std::size_t j = 0; j < n; ++j) {
    const cplx apj = a(p, j), aqj = a(q, j);
    a(p, j) = c * apj - se * aqj;
    a(q, j) = sec * apj + c * aqj;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const cplx vip = v(i, p), viq = v(i, q);
    v(i, p) = c * vip - sec * viq;
    v(i, q) = se * vip + c * viq;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();
}

bool lexicographically_less(const ComplexMatrix& v, std::size_t i, std::size_t j) {
  for (std::size_t r = 0; r < v.rows(); ++r) {
    const cplx a = v(r, i), b = v(r, j);
    if (a.real() != b.real()) return a.real() < b.real();
    if (a.imag() != b.imag()) return a.imag() < b.imag();
  }
  return false;
}

HermitianEig eig_unchecked(ComplexMatrix a, double offdiag_tol) {
  const std::size_t n = a.rows();
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double threshold = offdiag_tol * a.frobenius_norm();
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (offdiagonal_norm(a) <= threshold) break;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) jacobi_rotate(a, v, p, q);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    const double li = a(i, i).real(), lj = a(j, j).real();
    if (li != lj) return li > lj;
    return lexicographically_less(v, i, j);
  });

  HermitianEig out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, k) = v(r, order[k]);
  }
  return out;
}

ComplexMatrix dilation(const ComplexMatrix& a) {
  const std::size_t r = a.rows(), c = a.cols();
  ComplexMatrix h(r + c, r + c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      h(i, r + j) = a(i, j);
      h(r + j, i) = std::conj(a(i, j));
    }
  return h;
}

void require_hermitian(const ComplexMatrix& h, const char* who) {
  if (!h.is_square()) throw InvalidInput(std::string(who) + ": matrix must be square");
  if (!h.is_hermitian(1e-12)) throw InvalidInput(std::string(who) + ": matrix must be Hermitian");
}

}  // namespace

HermitianEig hermitian_eig(const ComplexMatrix& h, double offdiag_tol) {
  require_hermitian(h, "hermitian_eig");
  if (!h.all_finite()) throw InvalidInput("hermitian_eig: non-finite entries");
  return eig_unchecked(hermitian_part(h), offdiag_tol);
}

std::vector<double> singular_values(const ComplexMatrix& a) {
  const std::size_t k = std::min(a.rows(), a.cols());
  if (k == 0) return {};
  const HermitianEig e = eig_unchecked(dilation(a), 1e-13);
  std::vector<double> s(k);
  for (std::size_t i = 0; i < k; ++i) s[i] = std::abs(e.eigenvalues[i]);
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

SingularTriplet top_singular_triplet(const ComplexMatrix& a) {
  const std::size_t r = a.rows(), c = a.cols();
  SingularTriplet out;
  out.left.assign(r, 0.0);
  out.right.assign(c, 0.0);
  if (r == 0 || c == 0) return out;
  const HermitianEig e = eig_unchecked(dilation(a), 1e-13);
  out.sigma = std::max(0.0, e.eigenvalues[0]);
  if (out.sigma == 0.0) {
    out.left[0] = 1.0;
    out.right[0] = 1.0;
    return out;
  }
  double nu = 0.0, nv = 0.0;
  for (std::size_t i = 0; i < r; ++i) nu += std::norm(e.eigenvectors(i, 0));
  for (std::size_t j = 0; j < c; ++j) nv += std::norm(e.eigenvectors(r + j, 0));
  nu = std::sqrt(nu);
  nv = std::sqrt(nv);
  for (std::size_t i = 0; i < r; ++i) out.left[i] = e.eigenvectors(i, 0) / nu;
  for (std::size_t j = 0; j < c; ++j) out.right[j] = e.eigenvectors(r + j, 0) / nv;
  return out;
}

double trace_norm(const ComplexMatrix& a) {
  if (!a.is_square()) throw InvalidInput("trace_norm: matrix must be square");
  if (a.is_hermitian(1e-14)) {
    const HermitianEig e = eig_unchecked(hermitian_part(a), 1e-13);
    double s = 0.0;
    for (double l : e.eigenvalues) s += std::abs(l);
    return s;
  }
  const auto s = singular_values(a);
  return std::accumulate(s.begin(), s.end(), 0.0);
}

double operator_norm(const ComplexMatrix& a) {
  const auto s = singular_values(a);
  return s.empty() ? 0.0 : s.front();
}

std::pair<ComplexMatrix, ComplexMatrix> pos_neg_split(const ComplexMatrix& h) {
  const HermitianEig e = hermitian_eig(h);
  const std::size_t n = h.rows();
  ComplexMatrix plus(n, n), minus(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double l = e.eigenvalues[k];
    if (l == 0.0) continue;
    ComplexMatrix& target = l > 0.0 ? plus : minus;
    const double w = std::abs(l);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        target(i, j) += w * e.eigenvectors(i, k) * std::conj(e.eigenvectors(j, k));
  }
  return {std::move(plus), std::move(minus)};
}

ComplexMatrix sign_operator(const ComplexMatrix& h) {
  const HermitianEig e = hermitian_eig(h);
  const std::size_t n = h.rows();
  double scale = 0.0;
  for (double l : e.eigenvalues) scale = std::max(scale, std::abs(l));
  ComplexMatrix s(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double l = e.eigenvalues[k];
    if (std::abs(l) <= 1e-12 * scale || l == 0.0) continue;
    const double sg = l > 0.0 ? 1.0 : -1.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        s(i, j) += sg * e.eigenvectors(i, k) * std::conj(e.eigenvectors(j, k));
  }
  return s;
}

ComplexMatrix polar_contraction(const ComplexMatrix& a) {
  if (!a.is_square()) throw InvalidInput("polar_contraction: matrix must be square");
  const std::size_t n = a.rows();
  const HermitianEig e = eig_unchecked(dilation(a), 1e-13);
  ComplexMatrix b(n, n);
  const double top = std::max(0.0, e.eigenvalues[0]);
  if (top == 0.0) return b;
  // Eigenvectors for +sigma have the form (u; v)/sqrt(2) with a v = sigma u.
  for (std::size_t k = 0; k < n; ++k) {
    if (e.eigenvalues[k] <= 1e-12 * top) break;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        b(i, j) += 2.0 * e.eigenvectors(n + i, k) * std::conj(e.eigenvectors(j, k));
  }
  return b;
}

ComplexMatrix random_gaussian(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (auto& e : m.data()) {
    const double re = normal(rng);
    const double im = normal(rng);
    e = cplx(re, im);
  }
  return m;
}

ComplexMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
  return hermitian_part(random_gaussian(n, n, rng));
}

void QuantumOwStrategy::validate(double tol) const {
  for (const auto& r : r_list) {
    if (r.rows() != d || r.cols() != d) throw InvalidInput("R_x has wrong dimension");
    if (selfadjoint && !r.is_hermitian(1e-12)) throw InvalidInput("R_x must be Hermitian");
    if (trace_norm(r) > 1.0 + tol) throw InvalidInput("R_x outside the trace-norm ball");
  }
  for (const auto& b : b_list) {
    if (b.rows() != d || b.cols() != d) throw InvalidInput("B_y has wrong dimension");
    if (selfadjoint && !b.is_hermitian(1e-12)) throw InvalidInput("B_y must be Hermitian");
    if (operator_norm(b) > 1.0 + tol) throw InvalidInput("B_y outside the operator-norm ball");
  }
}

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  std::vector<double> re, im;
  re.reserve(m.data().size());
  im.reserve(m.data().size());
  for (const auto& e : m.data()) {
    re.push_back(e.real());
    im.push_back(e.imag());
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
  const auto rows = j.at("rows").get<std::size_t>();
  const auto cols = j.at("cols").get<std::size_t>();
  const auto re = j.at("re").get<std::vector<double>>();
  const auto im = j.at("im").get<std::vector<double>>();
  if (re.size() != rows * cols || im.size() != rows * cols) throw InvalidInput("matrix JSON: size mismatch");
  std::vector<cplx> data(rows * cols);
  for (std::size_t i = 0; i < data.size(); ++i) data[i] = cplx(re[i], im[i]);
  return ComplexMatrix(rows, cols, std::move(data));
}

nlohmann::json quantum_strategy_to_json(const QuantumOwStrategy& s) {
  nlohmann::json r = nlohmann::json::array(), b = nlohmann::json::array();
  for (const auto& m : s.r_list) r.push_back(matrix_to_json(m));
  for (const auto& m : s.b_list) b.push_back(matrix_to_json(m));
  return {{"d", s.d}, {"selfadjoint", s.selfadjoint}, {"r", r}, {"b", b}};
}

QuantumOwStrategy quantum_strategy_from_json(const nlohmann::json& j) {
  QuantumOwStrategy s;
  s.d = j.at("d").get<std::size_t>();
  s.selfadjoint = j.at("selfadjoint").get<bool>();
  for (const auto& m : j.at("r")) s.r_list.push_back(matrix_from_json(m));
  for (const auto& m : j.at("b")) s.b_list.push_back(matrix_from_json(m));
  return s;
}

}  // namespace xorcomm
