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

#include "xorcomm/family.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>

#include "xorcomm/solvers.hpp"

namespace xorcomm {

namespace {

void require_family_n(int n) {
  if (n < 1) throw InvalidInput("family game: n must be >= 1");
  if (n > kFamilyMaxN)
    throw GuardExceeded("family game: n = " + std::to_string(n) + " exceeds the dense limit n <= " +
                        std::to_string(kFamilyMaxN));
}

std::uint64_t low_mask(int bits) { return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1; }

// Bit (i, j) set iff x_i z_j = -1.
std::uint64_t product_mask(int n, std::uint64_t xz) {
  std::uint64_t p = 0;
  for (int i = 0; i < n; ++i) {
    const std::uint64_t xi = (xz >> i) & 1;
    for (int j = 0; j < n; ++j) {
      const std::uint64_t zj = (xz >> (n + j)) & 1;
      p |= (xi ^ zj) << (i * n + j);
    }
  }
  return p;
}

int coefficient_from_mask(int n, std::uint64_t p, std::uint64_t y) {
  const std::uint64_t yneg = ~y & low_mask(n * n);
  return n * n - 2 * std::popcount(p ^ yneg);
}

std::vector<cplx> phi(int n, std::uint64_t bits) {
  std::vector<cplx> v(static_cast<std::size_t>(n));
  const double s = 1.0 / std::sqrt(static_cast<double>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = ((bits >> i) & 1) ? s : -s;
  return v;
}

ComplexMatrix to_complex(const RealMatrix& a) {
  ComplexMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
  return c;
}

double l2(std::span<const double> v) {
  double s = 0.0;
  for (double e : v) s += e * e;
  return std::sqrt(s);
}

}  // namespace

int family_coefficient(int n, std::uint64_t xz, std::uint64_t y) {
  return coefficient_from_mask(n, product_mask(n, xz), y);
}

std::uint64_t compute_M(int n) {
  require_family_n(n);
  const std::int64_t xs = std::int64_t{1} << (2 * n);
  const std::uint64_t ys = std::uint64_t{1} << (n * n);
  std::uint64_t total = 0;
#pragma omp parallel for schedule(static) reduction(+ : total)
  for (std::int64_t xz = 0; xz < xs; ++xz) {
    const std::uint64_t p = product_mask(n, static_cast<std::uint64_t>(xz));
    std::uint64_t part = 0;
    for (std::uint64_t y = 0; y < ys; ++y)
      part += static_cast<std::uint64_t>(std::abs(coefficient_from_mask(n, p, y)));
    total += part;
  }
  return total;
}

bool family_M_within_bounds(int n, std::uint64_t m) {
  const unsigned __int128 upper = static_cast<unsigned __int128>(n) << (n * n + 2 * n);
  const unsigned __int128 mm = m;
  return mm <= upper && 2 * mm * mm >= upper * upper;
}

FamilyGame build_family_game(int n) {
  require_family_n(n);
  const std::uint64_t m = compute_M(n);
  const std::size_t xs = std::size_t{1} << (2 * n);
  const std::size_t ys = std::size_t{1} << (n * n);
  RealMatrix t(xs, ys);
  const double inv = 1.0 / static_cast<double>(m);
#pragma omp parallel for schedule(static)
  for (std::int64_t xz = 0; xz < static_cast<std::int64_t>(xs); ++xz) {
    const std::uint64_t p = product_mask(n, static_cast<std::uint64_t>(xz));
    for (std::size_t y = 0; y < ys; ++y)
      t(static_cast<std::size_t>(xz), y) = coefficient_from_mask(n, p, y) * inv;
  }
  return FamilyGame{n, XorGame::from_coefficients(std::move(t)), m};
}

RealMatrix family_sign_matrix(int n, std::uint64_t y) {
  const std::size_t nn = static_cast<std::size_t>(n);
  RealMatrix a(nn, nn);
  for (std::size_t i = 0; i < nn; ++i)
    for (std::size_t j = 0; j < nn; ++j) a(i, j) = ((y >> (i * nn + j)) & 1) ? 1.0 : -1.0;
  return a;
}

FamilyStrategy family_quantum_strategy(int n) {
  const FamilyGame fg = build_family_game(n);
  const std::size_t d = static_cast<std::size_t>(n);
  FamilyStrategy out;
  out.strategy.d = d;
  out.strategy.selfadjoint = false;
  for (std::size_t xz = 0; xz < fg.game.x_count(); ++xz)
    out.strategy.r_list.push_back(ComplexMatrix::outer(phi(n, xz), phi(n, xz >> n)));

  double inv_norm_sum = 0.0;
  for (std::size_t y = 0; y < fg.game.y_count(); ++y) {
    const ComplexMatrix a = to_complex(family_sign_matrix(n, y));
    const double norm = std::max(operator_norm(a), 1e-14);
    inv_norm_sum += 1.0 / norm;
    ComplexMatrix b = a.transpose();
    b *= 1.0 / norm;
    out.strategy.b_list.push_back(std::move(b));
  }
  out.value = evaluate_quantum_ow(fg.game.coefficients(), out.strategy).real();
  out.closed_form = std::ldexp(static_cast<double>(n), 2 * n) / static_cast<double>(fg.m_normalizer) * inv_norm_sum;
  return out;
}

SplitResult selfadjoint_split(const RealMatrix& t, const QuantumOwStrategy& s) {
  if (s.r_list.size() != t.rows() || s.b_list.size() != t.cols()) throw InvalidInput("strategy shape mismatch");
  std::vector<ComplexMatrix> r_parts[2], b_parts[2];
  for (const auto& r : s.r_list) {
    r_parts[0].push_back(hermitian_part(r));
    r_parts[1].push_back(antihermitian_part(r));
  }
  for (const auto& b : s.b_list) {
    b_parts[0].push_back(hermitian_part(b));
    b_parts[1].push_back(antihermitian_part(b));
  }

  SplitResult best;
  double best_abs = -1.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      QuantumOwStrategy q{s.d, r_parts[a], b_parts[b], true};
      const double v = evaluate_quantum_ow(t, q).real();
      if (std::abs(v) > best_abs) {
        best_abs = std::abs(v);
        if (v < 0.0)
          for (auto& r : q.r_list) r *= -1.0;
        best.strategy = std::move(q);
        best.value = std::abs(v);
        best.r_part = a;
        best.b_part = b;
      }
    }
  best.value = evaluate_quantum_ow(t, best.strategy).real();
  return best;
}

KhintchineBound khintchine_upper_bound(int n, int k) {
  if (n < 1) throw InvalidInput("khintchine_upper_bound: n must be >= 1");
  if (static_cast<double>(k) < std::exp(2.0))
    throw InvalidInput("khintchine_upper_bound: the bound assumes k >= e^2 (k >= 8), got k = " + std::to_string(k));
  const double v = 2.0 * std::numbers::sqrt2 * std::exp(2.0) / n * std::log(static_cast<double>(k));
  return {v, v >= 1.0};
}

double rademacher_mean_abs(std::span<const double> alpha) {
  const int n = static_cast<int>(alpha.size());
  if (n > kKhintchineSingleMaxN) throw GuardExceeded("rademacher_mean_abs: n too large for exact enumeration");
  const std::uint64_t count = std::uint64_t{1} << n;
  double total = 0.0;
  for (std::uint64_t w = 0; w < count; ++w) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += ((w >> i) & 1) ? alpha[static_cast<std::size_t>(i)] : -alpha[static_cast<std::size_t>(i)];
    total += std::abs(s);
  }
  return total / static_cast<double>(count);
}

double double_rademacher_mean_abs(const RealMatrix& alpha) {
  const int n = static_cast<int>(alpha.rows());
  if (alpha.cols() != alpha.rows()) throw InvalidInput("double_rademacher_mean_abs: alpha must be square");
  if (n > kKhintchineDoubleMaxN) throw GuardExceeded("double_rademacher_mean_abs: n too large for exact enumeration");
  const std::uint64_t count = std::uint64_t{1} << n;
  std::vector<double> col(static_cast<std::size_t>(n));
  double total = 0.0;
  for (std::uint64_t w2 = 0; w2 < count; ++w2) {
    // col_i = sum_j alpha_ij r_j(w')
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = 0; j < n; ++j)
        s += ((w2 >> j) & 1) ? alpha(static_cast<std::size_t>(i), static_cast<std::size_t>(j))
                             : -alpha(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      col[static_cast<std::size_t>(i)] = s;
    }
    total += rademacher_mean_abs(col);
  }
  return total / static_cast<double>(count);
}

KhintchineReport khintchine_empirical(int n, int trials, std::uint64_t seed, int double_max_n) {
  if (n < 1 || trials < 1) throw InvalidInput("khintchine_empirical: n and trials must be >= 1");
  if (n > kKhintchineSingleMaxN) throw GuardExceeded("khintchine_empirical: n too large for exact enumeration");
  KhintchineReport rep;
  rep.n = n;
  rep.trials = trials;
  rep.double_checked = n <= std::min(double_max_n, kKhintchineDoubleMaxN);

  const std::size_t nn = static_cast<std::size_t>(n);
  std::vector<double> single(static_cast<std::size_t>(trials)), dbl(static_cast<std::size_t>(trials), 1.0);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < trials; ++i) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(i));
    std::normal_distribution<double> normal;
    std::vector<double> alpha(nn);
    for (double& a : alpha) a = normal(rng);
    single[static_cast<std::size_t>(i)] = rademacher_mean_abs(alpha) / l2(alpha);
    if (rep.double_checked) {
      RealMatrix m(nn, nn);
      for (double& a : m.mutable_data()) a = normal(rng);
      dbl[static_cast<std::size_t>(i)] = double_rademacher_mean_abs(m) / l2(m.data());
    }
  }

  auto [smin, smax] = std::minmax_element(single.begin(), single.end());
  rep.single_min = *smin;
  rep.single_max = *smax;
  rep.single_slack = std::min(rep.single_min - 1.0 / std::numbers::sqrt2, 1.0 - rep.single_max);
  if (rep.double_checked) {
    auto [dmin, dmax] = std::minmax_element(dbl.begin(), dbl.end());
    rep.double_min = *dmin;
    rep.double_max = *dmax;
    rep.double_slack = std::min(rep.double_min - 0.5, 1.0 - rep.double_max);
  }
  return rep;
}

double real_operator_norm(const RealMatrix& a) {
  const std::size_t r = a.rows(), c = a.cols();
  if (r == 0 || c == 0) return 0.0;
  std::vector<double> v(c, 1.0), av(r), w(c);
  // A start vector with distinct entries avoids being orthogonal to the top
  // singular vector for structured inputs.
  for (std::size_t j = 0; j < c; ++j) v[j] = 1.0 + 0.1 * static_cast<double>(j) / static_cast<double>(c);
  double lambda = 0.0;
  for (int it = 0; it < 5000; ++it) {
    const double nv = l2(v);
    if (nv == 0.0) return 0.0;
    for (double& e : v) e /= nv;
    for (std::size_t i = 0; i < r; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < c; ++j) s += a(i, j) * v[j];
      av[i] = s;
    }
    std::fill(w.begin(), w.end(), 0.0);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) w[j] += a(i, j) * av[i];
    double next = 0.0;
    for (std::size_t j = 0; j < c; ++j) next += w[j] * v[j];
    v.swap(w);
    if (std::abs(next - lambda) <= 1e-13 * next) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  return std::sqrt(std::max(lambda, 0.0));
}

LatalaEstimate latala_estimate(int n, int samples, std::uint64_t seed) {
  if (n < 1) throw InvalidInput("latala_estimate: n must be >= 1");
  LatalaEstimate est;
  const std::size_t nn = static_cast<std::size_t>(n);
  if (n <= 2) {
    const std::uint64_t count = std::uint64_t{1} << (n * n);
    double total = 0.0;
    for (std::uint64_t y = 0; y < count; ++y) total += operator_norm(to_complex(family_sign_matrix(n, y)));
    est.mean_norm = total / static_cast<double>(count);
    est.exact = true;
    est.samples = static_cast<int>(count);
  } else {
    if (samples < 1) throw InvalidInput("latala_estimate: samples must be >= 1");
    std::vector<double> norms(static_cast<std::size_t>(samples));
#pragma omp parallel for schedule(dynamic)
    for (int s = 0; s < samples; ++s) {
      std::mt19937_64 rng(seed + static_cast<std::uint64_t>(s));
      RealMatrix a(nn, nn);
      for (double& e : a.mutable_data()) e = (rng() >> 63) ? 1.0 : -1.0;
      norms[static_cast<std::size_t>(s)] = real_operator_norm(a);
    }
    double total = 0.0;
    for (double v : norms) total += v;
    est.mean_norm = total / samples;
    est.samples = samples;
  }
  est.ratio = est.mean_norm / std::sqrt(static_cast<double>(n));
  return est;
}

XorGame game_from_spec(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidInput("game spec must be a JSON object");
  if (j.contains("family")) {
    if (j.at("family") != "rademacher") throw InvalidInput("unknown game family: " + j.at("family").dump());
    if (!j.contains("n") || !j.at("n").is_number_integer()) throw InvalidInput("family spec needs an integer n");
    return build_family_game(j.at("n").get<int>()).game;
  }
  return game_from_json(j);
}

}  // namespace xorcomm
