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

#include "xorcomm/bell_lift.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace xorcomm {

namespace {

void check_povm(const std::vector<const ComplexMatrix*>& elems, double tol, const std::string& what) {
  const std::size_t d = elems.front()->rows();
  ComplexMatrix sum(d, d);
  for (const ComplexMatrix* e : elems) {
    if (!e->is_hermitian(tol)) throw std::logic_error(what + ": element is not Hermitian");
    const double scale = std::max(operator_norm(*e), 1.0);
    const HermitianEig eig = hermitian_eig(hermitian_part(*e));
    if (eig.eigenvalues.back() < -tol * scale) throw std::logic_error(what + ": element is not positive semidefinite");
    sum += *e;
  }
  sum -= ComplexMatrix::identity(d);
  if (sum.max_abs() > tol) throw std::logic_error(what + ": elements do not sum to the identity");
}

// <psi| e (x) p |psi> for psi indexed i d + k.
cplx expectation(const std::vector<cplx>& psi, const ComplexMatrix& e, const ComplexMatrix& p) {
  const std::size_t d = e.rows();
  cplx total = 0.0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) {
      const cplx left = std::conj(psi[i * d + k]);
      if (left == 0.0) continue;
      cplx inner = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        if (e(i, j) == 0.0) continue;
        for (std::size_t l = 0; l < d; ++l) inner += e(i, j) * p(k, l) * psi[j * d + l];
      }
      total += left * inner;
    }
  return total;
}

}  // namespace

BellFunctional build_lifted_functional(const XorGame& g, std::size_t D) {
  if (D < 1) throw InvalidInput("build_lifted_functional: D must be >= 1");
  BellFunctional b(g.x_count(), g.y_count() * D, 2 * D, 2);
  for (std::size_t x = 0; x < g.x_count(); ++x)
    for (std::size_t y = 0; y < g.y_count(); ++y)
      for (std::size_t k = 0; k < D; ++k)
        for (int s : {1, -1})
          for (int bo : {1, -1})
            b(lift_alice_output(k, s), lift_bob_output(bo), x, lift_bob_input(y, k, D)) = g.t(x, y) * s * bo;
  return b;
}

WeylSet weyl_unitaries(std::size_t d) {
  if (d < 1) throw InvalidInput("weyl_unitaries: d must be >= 1");
  WeylSet w;
  w.d = d;
  w.unitaries.reserve(d * d);
  for (std::size_t k = 1; k <= d; ++k)
    for (std::size_t j = 1; j <= d; ++j) {
      // (v_k u_j)|l> = e^{2 pi i j l / d} |l + k>
      ComplexMatrix m(d, d);
      for (std::size_t l = 0; l < d; ++l) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>((j * l) % d) / static_cast<double>(d);
        m((l + k) % d, l) = std::polar(1.0, angle);
      }
      w.unitaries.push_back(std::move(m));
    }
  return w;
}

double weyl_completeness_error(const WeylSet& w, const ComplexMatrix& a) {
  if (a.rows() != w.d || a.cols() != w.d) throw InvalidInput("weyl_completeness_error: dimension mismatch");
  ComplexMatrix sum(w.d, w.d);
  for (const auto& u : w.unitaries) sum += u * a * u.adjoint();
  sum *= 1.0 / static_cast<double>(w.d);
  ComplexMatrix expected = ComplexMatrix::identity(w.d);
  expected *= a.trace();
  return (sum - expected).max_abs();
}

void LiftedStrategy::validate(double tol) const {
  const std::size_t D = d * d;
  for (std::size_t x = 0; x < alice_povms.size(); ++x) {
    if (alice_povms[x].size() != 2 * D) throw std::logic_error("Alice POVM has the wrong number of outcomes");
    std::vector<const ComplexMatrix*> elems;
    for (const auto& e : alice_povms[x]) elems.push_back(&e);
    check_povm(elems, tol, "Alice POVM for x = " + std::to_string(x));
  }
  for (std::size_t yk = 0; yk < bob_povms.size(); ++yk)
    check_povm({&bob_povms[yk][0], &bob_povms[yk][1]}, tol, "Bob POVM for input " + std::to_string(yk));
  double norm = 0.0;
  for (const cplx& c : state) norm += std::norm(c);
  if (state.size() != D || std::abs(norm - 1.0) > 1e-12) throw std::logic_error("shared state is not normalized");
}

LiftedStrategy teleportation_strategy(const XorGame& g, const QuantumOwStrategy& s) {
  s.validate();
  if (!s.selfadjoint) throw InvalidInput("teleportation_strategy: strategy must be self-adjoint");
  if (s.r_list.size() != g.x_count() || s.b_list.size() != g.y_count())
    throw InvalidInput("teleportation_strategy: strategy does not match the game");
  const std::size_t d = s.d;
  const std::size_t D = d * d;
  const WeylSet w = weyl_unitaries(d);

  LiftedStrategy ls;
  ls.d = d;
  ls.effective = s;

  const double inv_d = 1.0 / static_cast<double>(d);
  for (std::size_t x = 0; x < g.x_count(); ++x) {
    ComplexMatrix& r = ls.effective.r_list[x];
    const double norm = trace_norm(r);
    ComplexMatrix plus, minus;
    if (norm <= 1e-14) {
      // Any state split evenly gives a valid POVM and R_x = 0.
      r = ComplexMatrix(d, d);
      plus = ComplexMatrix::identity(d);
      plus *= 0.5 * inv_d;
      minus = plus;
    } else {
      r *= 1.0 / norm;
      std::tie(plus, minus) = pos_neg_split(r);
    }
    std::vector<ComplexMatrix> povm(2 * D);
    for (std::size_t a = 0; a < D; ++a) {
      const ComplexMatrix& u = w.unitaries[a];
      const ComplexMatrix ua = u.adjoint();
      povm[lift_alice_output(a, 1)] = inv_d * (u * plus * ua);
      povm[lift_alice_output(a, -1)] = inv_d * (u * minus * ua);
    }
    ls.alice_povms.push_back(std::move(povm));
  }

  ls.bob_povms.resize(g.y_count() * D);
  const ComplexMatrix id = ComplexMatrix::identity(d);
  for (std::size_t y = 0; y < g.y_count(); ++y) {
    const ComplexMatrix f_plus = 0.5 * (id + s.b_list[y]);
    const ComplexMatrix f_minus = 0.5 * (id - s.b_list[y]);
    for (std::size_t k = 0; k < D; ++k) {
      const ComplexMatrix wbar = w.unitaries[k].conjugate();
      const ComplexMatrix wt = w.unitaries[k].transpose();
      auto& out = ls.bob_povms[lift_bob_input(y, k, D)];
      out[lift_bob_output(1)] = wbar * f_plus.transpose() * wt;
      out[lift_bob_output(-1)] = wbar * f_minus.transpose() * wt;
    }
  }

  ls.state.assign(D, 0.0);
  for (std::size_t i = 0; i < d; ++i) ls.state[i * d + i] = 1.0 / std::sqrt(static_cast<double>(d));

  ls.validate();
  return ls;
}

double evaluate_bell(const BellFunctional& b, const LiftedStrategy& ls) {
  if (b.x_count() != ls.alice_povms.size() || b.y_count() != ls.bob_povms.size())
    throw InvalidInput("evaluate_bell: input counts do not match the strategy");
  if (b.x_count() == 0 || b.a_count() != ls.alice_povms.front().size() || b.b_count() != 2)
    throw InvalidInput("evaluate_bell: output counts do not match the strategy");

  std::vector<double> partial(b.x_count(), 0.0);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t xi = 0; xi < static_cast<std::int64_t>(b.x_count()); ++xi) {
    const std::size_t x = static_cast<std::size_t>(xi);
    double acc = 0.0;
    for (std::size_t a = 0; a < b.a_count(); ++a)
      for (std::size_t bo = 0; bo < 2; ++bo)
        for (std::size_t y = 0; y < b.y_count(); ++y) {
          const double c = b(a, bo, x, y);
          if (c == 0.0) continue;
          acc += c * expectation(ls.state, ls.alice_povms[x][a], ls.bob_povms[y][bo]).real();
        }
    partial[x] = acc;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace xorcomm
