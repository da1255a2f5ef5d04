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

#include "xorcomm/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>

#include "enumerate.hpp"

namespace xorcomm {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// base^exp, saturating at UINT64_MAX.
std::uint64_t saturating_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > UINT64_MAX / base) return UINT64_MAX;
    r *= base;
  }
  return r;
}

void require_nonempty(const RealMatrix& t) {
  if (t.rows() == 0 || t.cols() == 0) throw InvalidInput("coefficient matrix must be nonempty");
}

// ---------------------------------------------------------------------------
// Exact classical value: Gray code over t_1..t_{X-1}, t_0 = +1.

class SignState {
 public:
  explicit SignState(const RealMatrix& t) : t_(t), cols_(t.cols(), 0.0) {}

  void reset(std::span<const int> digits) {
    std::fill(cols_.begin(), cols_.end(), 0.0);
    add_row(0, 1.0);
    for (std::size_t i = 0; i < digits.size(); ++i) add_row(i + 1, digits[i] == 0 ? 1.0 : -1.0);
    refresh();
  }
  void move(std::size_t pos, int /*from*/, int to) {
    add_row(pos + 1, to == 0 ? 2.0 : -2.0);
    refresh();
  }
  double value() const { return value_; }

 private:
  void add_row(std::size_t x, double s) {
    const auto row = t_.row(x);
    for (std::size_t y = 0; y < cols_.size(); ++y) cols_[y] += s * row[y];
  }
  void refresh() {
    double v = 0.0;
    for (double c : cols_) v += std::abs(c);
    value_ = v;
  }

  const RealMatrix& t_;
  std::vector<double> cols_;
  double value_ = 0.0;
};

// ---------------------------------------------------------------------------
// Exact one-way classical value: per-x option o = 2m + (s < 0).

class OwState {
 public:
  OwState(const RealMatrix& t, int k)
      : t_(t), k_(static_cast<std::size_t>(k)), sums_(k_ * t.cols(), 0.0), mass_(k_, 0.0) {}

  void reset(std::span<const int> digits) {
    std::fill(sums_.begin(), sums_.end(), 0.0);
    add(0, 0, 1.0);
    for (std::size_t i = 0; i < digits.size(); ++i) add(i + 1, msg(digits[i]), sgn(digits[i]));
    for (std::size_t m = 0; m < k_; ++m) refresh(m);
  }
  void move(std::size_t pos, int from, int to) {
    const std::size_t x = pos + 1;
    add(x, msg(from), -sgn(from));
    add(x, msg(to), sgn(to));
    refresh(msg(from));
    if (msg(to) != msg(from)) refresh(msg(to));
  }
  double value() const {
    double v = 0.0;
    for (double a : mass_) v += a;
    return v;
  }
  std::span<const double> sums(std::size_t m) const { return {sums_.data() + m * t_.cols(), t_.cols()}; }

  static std::size_t msg(int option) { return static_cast<std::size_t>(option / 2); }
  static double sgn(int option) { return option % 2 == 0 ? 1.0 : -1.0; }

 private:
  void add(std::size_t x, std::size_t m, double s) {
    const auto row = t_.row(x);
    double* dst = sums_.data() + m * t_.cols();
    for (std::size_t y = 0; y < t_.cols(); ++y) dst[y] += s * row[y];
  }
  void refresh(std::size_t m) {
    double v = 0.0;
    for (double c : sums(m)) v += std::abs(c);
    mass_[m] = v;
  }

  const RealMatrix& t_;
  std::size_t k_;
  std::vector<double> sums_;  // message-major
  std::vector<double> mass_;
};

// ---------------------------------------------------------------------------
// Exact Bell classical value: Gray code over Alice's output per input.

class BellState {
 public:
  explicit BellState(const BellFunctional& b)
      : b_(b), sums_(b.b_count() * b.y_count(), 0.0) {}

  void reset(std::span<const int> digits) {
    std::fill(sums_.begin(), sums_.end(), 0.0);
    for (std::size_t x = 0; x < digits.size(); ++x) add(x, static_cast<std::size_t>(digits[x]), 1.0);
    refresh();
  }
  void move(std::size_t x, int from, int to) {
    add(x, static_cast<std::size_t>(from), -1.0);
    add(x, static_cast<std::size_t>(to), 1.0);
    refresh();
  }
  double value() const { return value_; }
  // Per-y sums for output b.
  double sum(std::size_t b, std::size_t y) const { return sums_[b * b_.y_count() + y]; }

 private:
  void add(std::size_t x, std::size_t a, double s) {
    for (std::size_t b = 0; b < b_.b_count(); ++b)
      for (std::size_t y = 0; y < b_.y_count(); ++y) sums_[b * b_.y_count() + y] += s * b_(a, b, x, y);
  }
  void refresh() {
    double plus = 0.0, minus = 0.0;
    for (std::size_t y = 0; y < b_.y_count(); ++y) {
      double hi = sum(0, y), lo = sum(0, y);
      for (std::size_t b = 1; b < b_.b_count(); ++b) {
        hi = std::max(hi, sum(b, y));
        lo = std::min(lo, sum(b, y));
      }
      plus += hi;
      minus -= lo;
    }
    value_ = std::max(plus, minus);
  }

  const BellFunctional& b_;
  std::vector<double> sums_;
  double value_ = 0.0;
};

// ---------------------------------------------------------------------------
// See-saw helpers.

std::vector<double> normalized_or(std::vector<double> w, const std::vector<double>& fallback) {
  double n = 0.0;
  for (double e : w) n += e * e;
  n = std::sqrt(n);
  if (n == 0.0) return fallback;
  for (double& e : w) e /= n;
  return w;
}

std::vector<double> random_unit(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> v(dim);
  for (;;) {
    double n = 0.0;
    for (double& e : v) {
      e = normal(rng);
      n += e * e;
    }
    if (n > 0.0) {
      n = std::sqrt(n);
      for (double& e : v) e /= n;
      return v;
    }
  }
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

struct VectorRun {
  double value = 0.0;
  VectorStrategy strategy;
  std::uint64_t iterations = 0;
  std::vector<double> trace;
};

VectorRun vector_seesaw_run(const RealMatrix& t, std::size_t dim, const SeesawOptions& opt, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t xs = t.rows(), ys = t.cols();
  VectorRun run;
  run.strategy.dim = dim;
  run.strategy.u_list.assign(xs, std::vector<double>(dim, 0.0));
  for (auto& u : run.strategy.u_list) u[0] = 1.0;
  run.strategy.v_list.resize(ys);
  for (auto& v : run.strategy.v_list) v = random_unit(dim, rng);

  auto& us = run.strategy.u_list;
  auto& vs = run.strategy.v_list;
  double prev = -1.0;
  for (int it = 0; it < opt.max_iterations; ++it) {
    double obj = 0.0;
    for (std::size_t x = 0; x < xs; ++x) {
      std::vector<double> w(dim, 0.0);
      for (std::size_t y = 0; y < ys; ++y)
        for (std::size_t i = 0; i < dim; ++i) w[i] += t(x, y) * vs[y][i];
      us[x] = normalized_or(w, us[x]);
      obj += dot(us[x], w);
    }
    run.trace.push_back(obj);
    obj = 0.0;
    for (std::size_t y = 0; y < ys; ++y) {
      std::vector<double> w(dim, 0.0);
      for (std::size_t x = 0; x < xs; ++x)
        for (std::size_t i = 0; i < dim; ++i) w[i] += t(x, y) * us[x][i];
      vs[y] = normalized_or(w, vs[y]);
      obj += dot(vs[y], w);
    }
    run.trace.push_back(obj);
    ++run.iterations;
    if (obj - prev <= opt.tol * std::max(std::abs(obj), 1e-300)) break;
    prev = obj;
  }
  run.value = evaluate_vectors(t, run.strategy);
  return run;
}

struct OperatorRun {
  double value = 0.0;
  QuantumOwStrategy strategy;
  std::uint64_t iterations = 0;
  std::vector<double> trace;
};

ComplexMatrix random_ball_point(std::size_t d, bool selfadjoint, std::mt19937_64& rng) {
  for (;;) {
    ComplexMatrix r = selfadjoint ? random_hermitian(d, rng) : random_gaussian(d, d, rng);
    const double n = trace_norm(r);
    if (n > 0.0) return r *= 1.0 / n;
  }
}

// B_y maximizing Re tr(B_y W_y); keeps the previous B_y when W_y = 0.
double update_observables(const RealMatrix& t, QuantumOwStrategy& s) {
  const std::size_t d = s.d;
  double obj = 0.0;
  for (std::size_t y = 0; y < t.cols(); ++y) {
    ComplexMatrix w(d, d);
    for (std::size_t x = 0; x < t.rows(); ++x)
      if (t(x, y) != 0.0) w.add_scaled(s.r_list[x], t(x, y));
    if (w.max_abs() == 0.0) continue;
    if (s.selfadjoint) {
      s.b_list[y] = sign_operator(hermitian_part(w));
    } else {
      s.b_list[y] = polar_contraction(w);
    }
    obj += trace_product(s.b_list[y], w).real();
  }
  return obj;
}

// R_x maximizing Re tr(R_x V_x) over the trace-norm ball.
double update_states(const RealMatrix& t, QuantumOwStrategy& s) {
  const std::size_t d = s.d;
  double obj = 0.0;
  for (std::size_t x = 0; x < t.rows(); ++x) {
    ComplexMatrix v(d, d);
    for (std::size_t y = 0; y < t.cols(); ++y)
      if (t(x, y) != 0.0) v.add_scaled(s.b_list[y], t(x, y));
    if (v.max_abs() == 0.0) continue;
    if (s.selfadjoint) {
      const HermitianEig e = hermitian_eig(hermitian_part(v));
      const bool top = e.eigenvalues.front() >= -e.eigenvalues.back();
      const std::size_t idx = top ? 0 : d - 1;
      const auto vec = e.vector(idx);
      s.r_list[x] = ComplexMatrix::outer(vec, vec);
      if (!top) s.r_list[x] *= -1.0;
    } else {
      const SingularTriplet st = top_singular_triplet(v);
      s.r_list[x] = ComplexMatrix::outer(st.right, st.left);
    }
    obj += trace_product(s.r_list[x], v).real();
  }
  return obj;
}

OperatorRun operator_seesaw_run(const RealMatrix& t, std::size_t d, bool selfadjoint, const SeesawOptions& opt,
                                std::uint64_t seed, const QuantumOwStrategy* warm) {
  OperatorRun run;
  auto& s = run.strategy;
  s.d = d;
  s.selfadjoint = selfadjoint;
  if (warm) {
    s.r_list = warm->r_list;
    s.b_list = warm->b_list;
    run.trace.push_back(evaluate_quantum_ow(t, s).real());
  } else {
    std::mt19937_64 rng(seed);
    s.r_list.reserve(t.rows());
    for (std::size_t x = 0; x < t.rows(); ++x) s.r_list.push_back(random_ball_point(d, selfadjoint, rng));
    s.b_list.assign(t.cols(), ComplexMatrix(d, d));
  }

  double prev = -1.0;
  for (int it = 0; it < opt.max_iterations; ++it) {
    run.trace.push_back(update_observables(t, s));
    const double obj = update_states(t, s);
    run.trace.push_back(obj);
    ++run.iterations;
    if (obj - prev <= opt.tol * std::max(std::abs(obj), 1e-300)) break;
    prev = obj;
  }
  run.value = evaluate_quantum_ow(t, s).real();
  return run;
}

// ---------------------------------------------------------------------------
// Local search for the one-way classical value.

struct LocalRun {
  double value = 0.0;
  ClassicalOwStrategy strategy;
  std::uint64_t sweeps = 0;
};

ClassicalOwStrategy strategy_from_choices(const RealMatrix& t, int k, std::vector<int> sign,
                                          std::vector<int> msg) {
  ClassicalOwStrategy s;
  s.k = k;
  s.alice_sign = std::move(sign);
  s.alice_msg = std::move(msg);
  s.bob_sign.assign(t.cols() * static_cast<std::size_t>(k), 1);
  std::vector<double> col(t.cols());
  for (int m = 0; m < k; ++m) {
    std::fill(col.begin(), col.end(), 0.0);
    for (std::size_t x = 0; x < t.rows(); ++x) {
      if (s.alice_msg[x] != m) continue;
      for (std::size_t y = 0; y < t.cols(); ++y) col[y] += s.alice_sign[x] * t(x, y);
    }
    for (std::size_t y = 0; y < t.cols(); ++y)
      s.bob_sign[y * static_cast<std::size_t>(k) + static_cast<std::size_t>(m)] = sign_of(col[y]);
  }
  return s;
}

double classical_ow_value(const RealMatrix& t, const ClassicalOwStrategy& s) {
  double v = 0.0;
  for (std::size_t x = 0; x < t.rows(); ++x) {
    double row = 0.0;
    for (std::size_t y = 0; y < t.cols(); ++y) row += t(x, y) * s.bob(y, s.alice_msg[x]);
    v += s.alice_sign[x] * row;
  }
  return v;
}

LocalRun local_search_run(const RealMatrix& t, int k, std::uint64_t seed, bool distinct_init) {
  const std::size_t xs = t.rows(), ys = t.cols();
  const std::size_t kk = static_cast<std::size_t>(k);
  std::mt19937_64 rng(seed);
  std::vector<int> sign(xs), msg(xs);
  if (distinct_init) {
    for (std::size_t x = 0; x < xs; ++x) {
      sign[x] = 1;
      msg[x] = static_cast<int>(x);
    }
  } else {
    std::uniform_int_distribution<int> coin(0, 1), letter(0, k - 1);
    for (std::size_t x = 0; x < xs; ++x) {
      sign[x] = coin(rng) ? 1 : -1;
      msg[x] = letter(rng);
    }
  }

  std::vector<double> sums(kk * ys, 0.0), mass(kk, 0.0);
  auto add = [&](std::size_t x, std::size_t m, double s) {
    for (std::size_t y = 0; y < ys; ++y) sums[m * ys + y] += s * t(x, y);
  };
  auto refresh = [&](std::size_t m) {
    double v = 0.0;
    for (std::size_t y = 0; y < ys; ++y) v += std::abs(sums[m * ys + y]);
    mass[m] = v;
  };
  for (std::size_t x = 0; x < xs; ++x) add(x, static_cast<std::size_t>(msg[x]), sign[x]);
  for (std::size_t m = 0; m < kk; ++m) refresh(m);

  double scale = 0.0;
  for (double e : t.data()) scale += std::abs(e);
  const double eps = 1e-13 * std::max(scale, 1e-300);

  std::vector<std::size_t> order(xs);
  std::iota(order.begin(), order.end(), 0);
  LocalRun run;
  for (int sweep = 0; sweep < 10000; ++sweep) {
    ++run.sweeps;
    std::shuffle(order.begin(), order.end(), rng);
    bool changed = false;
    for (std::size_t x : order) {
      const std::size_t m0 = static_cast<std::size_t>(msg[x]);
      add(x, m0, -sign[x]);
      refresh(m0);
      auto gain = [&](std::size_t m, double s) {
        double v = 0.0;
        for (std::size_t y = 0; y < ys; ++y) v += std::abs(sums[m * ys + y] + s * t(x, y));
        return v - mass[m];
      };
      double best = gain(m0, sign[x]);
      int best_sign = sign[x];
      std::size_t best_m = m0;
      for (std::size_t m = 0; m < kk; ++m)
        for (int s : {1, -1}) {
          if (m == m0 && s == sign[x]) continue;
          const double g = gain(m, s);
          if (g > best + eps) {
            best = g;
            best_sign = s;
            best_m = m;
          }
        }
      if (best_m != m0 || best_sign != sign[x]) changed = true;
      sign[x] = best_sign;
      msg[x] = static_cast<int>(best_m);
      add(x, best_m, best_sign);
      refresh(best_m);
    }
    if (!changed) break;
  }
  run.strategy = strategy_from_choices(t, k, std::move(sign), std::move(msg));
  run.value = classical_ow_value(t, run.strategy);
  return run;
}

}  // namespace

// ---------------------------------------------------------------------------

SolveReport classical_value_exact(const XorGame& g, std::uint64_t guard) {
  return classical_value_exact(g.coefficients(), guard);
}

SolveReport classical_value_exact(const RealMatrix& t, std::uint64_t guard) {
  require_nonempty(t);
  if (saturating_pow(2, t.rows()) > guard)
    throw GuardExceeded("classical_value_exact: 2^" + std::to_string(t.rows()) +
                        " sign patterns exceed the enumeration guard; use the quantum/local heuristics or "
                        "raise --guard");
  const auto start = Clock::now();
  const std::vector<int> radices(t.rows() - 1, 2);
  const auto best = detail::enumerate_gray(radices, [&] { return SignState(t); });

  SignCertificate cert;
  cert.t.assign(t.rows(), 1);
  for (std::size_t i = 0; i < best.digits.size(); ++i) cert.t[i + 1] = best.digits[i] == 0 ? 1 : -1;
  cert.s.assign(t.cols(), 1);
  for (std::size_t y = 0; y < t.cols(); ++y) {
    double c = 0.0;
    for (std::size_t x = 0; x < t.rows(); ++x) c += cert.t[x] * t(x, y);
    cert.s[y] = sign_of(c);
  }

  SolveReport r;
  r.certificate = cert;
  r.value = replay_certificate(t, r);
  r.exact = true;
  r.iterations = best.visited;
  r.elapsed_seconds = seconds_since(start);
  return r;
}

SolveReport quantum_value_seesaw(const XorGame& g, std::size_t dim, const SeesawOptions& opt) {
  return quantum_value_seesaw(g.coefficients(), dim, opt);
}

SolveReport quantum_value_seesaw(const RealMatrix& t, std::size_t dim, const SeesawOptions& opt) {
  require_nonempty(t);
  if (dim < 1) throw InvalidInput("quantum_value_seesaw: dim must be >= 1");
  if (opt.restarts < 1) throw InvalidInput("restarts must be >= 1");
  const auto start = Clock::now();
  std::vector<VectorRun> runs(static_cast<std::size_t>(opt.restarts));
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < opt.restarts; ++i)
    runs[static_cast<std::size_t>(i)] = vector_seesaw_run(t, dim, opt, opt.seed + static_cast<std::uint64_t>(i));

  const std::size_t b = detail::argmax_first(runs, [](const VectorRun& r) { return r.value; });
  SolveReport r;
  r.value = runs[b].value;
  r.certificate = std::move(runs[b].strategy);
  r.objective_trace = std::move(runs[b].trace);
  r.restarts_used = opt.restarts;
  for (const auto& run : runs) r.iterations += run.iterations;
  r.seed = opt.seed;
  r.elapsed_seconds = seconds_since(start);
  return r;
}

bool ow_exact_feasible(std::size_t x_count, int k, std::uint64_t guard) {
  return k >= 1 && saturating_pow(2 * static_cast<std::uint64_t>(k), x_count) <= guard;
}

SolveReport ow_classical_value_exact(const XorGame& g, int k, std::uint64_t guard) {
  return ow_classical_value_exact(g.coefficients(), k, guard);
}

SolveReport ow_classical_value_exact(const RealMatrix& t, int k, std::uint64_t guard) {
  require_nonempty(t);
  if (k < 1) throw InvalidInput("message alphabet k must be >= 1");
  if (!ow_exact_feasible(t.rows(), k, guard))
    throw GuardExceeded("ow_classical_value_exact: (2k)^x_count exceeds the work guard; use local search "
                        "(--heuristic) or raise --guard");
  const auto start = Clock::now();
  // At most x_count distinct messages are ever useful.
  const int k_eff = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(k), t.rows()));
  const std::vector<int> radices(t.rows() - 1, 2 * k_eff);
  const auto best = detail::enumerate_gray(radices, [&] { return OwState(t, k_eff); });

  std::vector<int> sign(t.rows(), 1), msg(t.rows(), 0);
  for (std::size_t i = 0; i < best.digits.size(); ++i) {
    sign[i + 1] = OwState::sgn(best.digits[i]) > 0 ? 1 : -1;
    msg[i + 1] = static_cast<int>(OwState::msg(best.digits[i]));
  }
  SolveReport r;
  r.certificate = strategy_from_choices(t, k, std::move(sign), std::move(msg));
  r.value = replay_certificate(t, r);
  r.exact = true;
  r.iterations = best.visited;
  r.elapsed_seconds = seconds_since(start);
  return r;
}

SolveReport ow_classical_value_local(const XorGame& g, int k, int restarts, std::uint64_t seed) {
  return ow_classical_value_local(g.coefficients(), k, restarts, seed);
}

SolveReport ow_classical_value_local(const RealMatrix& t, int k, int restarts, std::uint64_t seed) {
  require_nonempty(t);
  if (k < 1) throw InvalidInput("message alphabet k must be >= 1");
  if (restarts < 1) throw InvalidInput("restarts must be >= 1");
  const auto start = Clock::now();
  const bool saturating = static_cast<std::size_t>(k) >= t.rows();
  std::vector<LocalRun> runs(static_cast<std::size_t>(restarts));
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < restarts; ++i)
    runs[static_cast<std::size_t>(i)] =
        local_search_run(t, k, seed + static_cast<std::uint64_t>(i), saturating && i == 0);

  const std::size_t b = detail::argmax_first(runs, [](const LocalRun& r) { return r.value; });
  SolveReport r;
  r.value = runs[b].value;
  r.certificate = std::move(runs[b].strategy);
  r.restarts_used = restarts;
  for (const auto& run : runs) r.iterations += run.sweeps;
  r.seed = seed;
  r.elapsed_seconds = seconds_since(start);
  return r;
}

SolveReport ow_quantum_value_seesaw(const XorGame& g, std::size_t d, bool selfadjoint, const SeesawOptions& opt,
                                    const QuantumOwStrategy* warm_start) {
  return ow_quantum_value_seesaw(g.coefficients(), d, selfadjoint, opt, warm_start);
}

SolveReport ow_quantum_value_seesaw(const RealMatrix& t, std::size_t d, bool selfadjoint,
                                    const SeesawOptions& opt, const QuantumOwStrategy* warm_start) {
  require_nonempty(t);
  if (d < 1) throw InvalidInput("ow_quantum_value_seesaw: d must be >= 1");
  if (opt.restarts < 1) throw InvalidInput("restarts must be >= 1");
  if (warm_start) {
    if (warm_start->d != d || warm_start->r_list.size() != t.rows() || warm_start->b_list.size() != t.cols())
      throw InvalidInput("warm start does not match the game and dimension");
    if (selfadjoint && !warm_start->selfadjoint) throw InvalidInput("warm start must be self-adjoint");
  }
  const auto start = Clock::now();
  const int offset = warm_start ? 1 : 0;
  const int total = opt.restarts + offset;
  std::vector<OperatorRun> runs(static_cast<std::size_t>(total));
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < total; ++i) {
    const bool warm = i < offset;
    runs[static_cast<std::size_t>(i)] = operator_seesaw_run(
        t, d, selfadjoint, opt, opt.seed + static_cast<std::uint64_t>(i - offset), warm ? warm_start : nullptr);
  }

  const std::size_t b = detail::argmax_first(runs, [](const OperatorRun& r) { return r.value; });
  SolveReport r;
  r.value = runs[b].value;
  r.certificate = std::move(runs[b].strategy);
  r.objective_trace = std::move(runs[b].trace);
  r.restarts_used = total;
  for (const auto& run : runs) r.iterations += run.iterations;
  r.seed = opt.seed;
  r.elapsed_seconds = seconds_since(start);
  return r;
}

QuantumOwStrategy diagonal_embedding(const ClassicalOwStrategy& s, std::size_t d) {
  if (static_cast<std::size_t>(s.k) > d) throw InvalidInput("diagonal_embedding: k must not exceed d");
  QuantumOwStrategy q;
  q.d = d;
  q.selfadjoint = true;
  for (std::size_t x = 0; x < s.alice_sign.size(); ++x) {
    ComplexMatrix r(d, d);
    r(static_cast<std::size_t>(s.alice_msg[x]), static_cast<std::size_t>(s.alice_msg[x])) = s.alice_sign[x];
    q.r_list.push_back(std::move(r));
  }
  const std::size_t ys = s.bob_sign.size() / static_cast<std::size_t>(s.k);
  for (std::size_t y = 0; y < ys; ++y) {
    ComplexMatrix b(d, d);
    for (std::size_t m = 0; m < d; ++m) b(m, m) = m < static_cast<std::size_t>(s.k) ? s.bob(y, static_cast<int>(m)) : 1;
    q.b_list.push_back(std::move(b));
  }
  return q;
}

SolveReport bell_classical_value_exact(const BellFunctional& b, std::uint64_t guard) {
  if (saturating_pow(b.a_count(), b.x_count()) > guard)
    throw GuardExceeded("bell_classical_value_exact: a_count^x_count exceeds the enumeration guard");
  const auto start = Clock::now();
  const std::vector<int> radices(b.x_count(), static_cast<int>(b.a_count()));
  const auto best = detail::enumerate_gray(radices, [&] { return BellState(b); });

  BellState state(b);
  state.reset(best.digits);
  BellCertificate cert;
  cert.alice_output = best.digits;
  double plus = 0.0, minus = 0.0;
  std::vector<int> hi(b.y_count(), 0), lo(b.y_count(), 0);
  for (std::size_t y = 0; y < b.y_count(); ++y) {
    for (std::size_t o = 1; o < b.b_count(); ++o) {
      if (state.sum(o, y) > state.sum(static_cast<std::size_t>(hi[y]), y)) hi[y] = static_cast<int>(o);
      if (state.sum(o, y) < state.sum(static_cast<std::size_t>(lo[y]), y)) lo[y] = static_cast<int>(o);
    }
    plus += state.sum(static_cast<std::size_t>(hi[y]), y);
    minus -= state.sum(static_cast<std::size_t>(lo[y]), y);
  }
  cert.orientation = plus >= minus ? 1 : -1;
  cert.bob_output = cert.orientation > 0 ? hi : lo;

  SolveReport r;
  r.value = evaluate_bell_deterministic(b, cert);
  r.certificate = std::move(cert);
  r.exact = true;
  r.iterations = best.visited;
  r.elapsed_seconds = seconds_since(start);
  return r;
}

DistributionalComplexity distributional_complexity_ow(const XorGame& g, double eps, int k_max,
                                                      std::uint64_t guard, int local_restarts,
                                                      std::uint64_t seed) {
  if (!(eps > 0.0 && eps <= 0.5)) throw InvalidInput("eps must lie in (0, 1/2]");
  if (k_max < 1) throw InvalidInput("k_max must be >= 1");
  DistributionalComplexity out;
  const double target = 2.0 * eps;
  for (int k = 1; k <= k_max; ++k) {
    double v;
    if (ow_exact_feasible(g.x_count(), k, guard)) {
      v = ow_classical_value_exact(g, k, guard).value;
    } else {
      v = ow_classical_value_local(g, k, local_restarts, seed).value;
      out.heuristic = true;
    }
    out.values.push_back(v);
    if (v >= target - 1e-12) {
      out.messages = k;
      out.bits = std::log2(static_cast<double>(k));
      break;
    }
  }
  return out;
}

cplx evaluate_quantum_ow(const RealMatrix& t, const QuantumOwStrategy& s) {
  if (s.r_list.size() != t.rows() || s.b_list.size() != t.cols()) throw InvalidInput("strategy shape mismatch");
  cplx v = 0.0;
  for (std::size_t x = 0; x < t.rows(); ++x)
    for (std::size_t y = 0; y < t.cols(); ++y)
      if (t(x, y) != 0.0) v += t(x, y) * trace_product(s.b_list[y], s.r_list[x]);
  return v;
}

double evaluate_vectors(const RealMatrix& t, const VectorStrategy& s) {
  if (s.u_list.size() != t.rows() || s.v_list.size() != t.cols()) throw InvalidInput("strategy shape mismatch");
  double v = 0.0;
  for (std::size_t x = 0; x < t.rows(); ++x)
    for (std::size_t y = 0; y < t.cols(); ++y) v += t(x, y) * dot(s.u_list[x], s.v_list[y]);
  return v;
}

double evaluate_bell_deterministic(const BellFunctional& b, const BellCertificate& c) {
  if (c.alice_output.size() != b.x_count() || c.bob_output.size() != b.y_count())
    throw InvalidInput("Bell certificate shape mismatch");
  double v = 0.0;
  for (std::size_t x = 0; x < b.x_count(); ++x)
    for (std::size_t y = 0; y < b.y_count(); ++y)
      v += b(static_cast<std::size_t>(c.alice_output[x]), static_cast<std::size_t>(c.bob_output[y]), x, y);
  return c.orientation * v;
}

double replay_certificate(const RealMatrix& t, const SolveReport& r) {
  return std::visit(
      [&](const auto& c) -> double {
        using C = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<C, SignCertificate>) {
          double v = 0.0;
          for (std::size_t x = 0; x < t.rows(); ++x)
            for (std::size_t y = 0; y < t.cols(); ++y) v += t(x, y) * c.t[x] * c.s[y];
          return v;
        } else if constexpr (std::is_same_v<C, ClassicalOwStrategy>) {
          c.validate(t.rows(), t.cols());
          return classical_ow_value(t, c);
        } else if constexpr (std::is_same_v<C, QuantumOwStrategy>) {
          return evaluate_quantum_ow(t, c).real();
        } else if constexpr (std::is_same_v<C, VectorStrategy>) {
          return evaluate_vectors(t, c);
        } else {
          throw InvalidInput("certificate cannot be replayed against a coefficient matrix");
        }
      },
      r.certificate);
}

nlohmann::json certificate_to_json(const Certificate& c) {
  return std::visit(
      [](const auto& v) -> nlohmann::json {
        using C = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<C, SignCertificate>) {
          return {{"type", "signs"}, {"t", v.t}, {"s", v.s}};
        } else if constexpr (std::is_same_v<C, ClassicalOwStrategy>) {
          auto j = classical_strategy_to_json(v);
          j["type"] = "classical_ow";
          return j;
        } else if constexpr (std::is_same_v<C, QuantumOwStrategy>) {
          auto j = quantum_strategy_to_json(v);
          j["type"] = "quantum_ow";
          return j;
        } else if constexpr (std::is_same_v<C, VectorStrategy>) {
          return {{"type", "vectors"}, {"dim", v.dim}, {"u", v.u_list}, {"v", v.v_list}};
        } else if constexpr (std::is_same_v<C, BellCertificate>) {
          return {{"type", "bell_deterministic"},
                  {"alice_output", v.alice_output},
                  {"bob_output", v.bob_output},
                  {"orientation", v.orientation}};
        } else {
          return nullptr;
        }
      },
      c);
}

}  // namespace xorcomm
