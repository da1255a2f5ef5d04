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

#include "xorcomm/game.hpp"

#include <cmath>

namespace xorcomm {

namespace {

bool all_finite(std::span<const double> v) {
  for (double e : v)
    if (!std::isfinite(e)) return false;
  return true;
}

double abs_sum(std::span<const double> v) {
  double s = 0.0;
  for (double e : v) s += std::abs(e);
  return s;
}

void require_same_shape(const RealMatrix& a, const RealMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw InvalidInput(std::string("shape mismatch: ") + what);
}

}  // namespace

RealMatrix::RealMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) throw InvalidInput("RealMatrix: data size does not match shape");
}

RealMatrix RealMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return {};
  const std::size_t cols = rows.front().size();
  RealMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw InvalidInput("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

XorGame XorGame::from_coefficients(RealMatrix t) {
  if (t.rows() == 0 || t.cols() == 0) throw InvalidInput("game must have at least one input per side");
  if (!all_finite(t.data())) throw InvalidInput("game coefficients must be finite");
  const double mass = abs_sum(t.data());
  if (std::abs(mass - 1.0) > kNormTolerance)
    throw InvalidInput("game coefficients must satisfy sum |t| = 1 (got " + std::to_string(mass) + ")");
  return XorGame(std::move(t));
}

double XorGame::pi(std::size_t x, std::size_t y) const { return std::abs(t_(x, y)); }

CorrelationMatrix::CorrelationMatrix(RealMatrix gamma) : gamma_(std::move(gamma)) {
  for (double e : gamma_.data()) {
    if (!std::isfinite(e) || std::abs(e) > 1.0 + 1e-12)
      throw InvalidInput("correlation entries must lie in [-1, 1]");
  }
}

BellFunctional::BellFunctional(std::size_t x_count, std::size_t y_count, std::size_t a_count,
                               std::size_t b_count)
    : x_count_(x_count),
      y_count_(y_count),
      a_count_(a_count),
      b_count_(b_count),
      coeffs_(x_count * y_count * a_count * b_count, 0.0) {
  if (x_count == 0 || y_count == 0 || a_count == 0 || b_count == 0)
    throw InvalidInput("Bell functional sizes must be positive");
}

BellFunctional::BellFunctional(std::size_t x_count, std::size_t y_count, std::size_t a_count,
                               std::size_t b_count, std::vector<double> coeffs)
    : BellFunctional(x_count, y_count, a_count, b_count) {
  if (coeffs.size() != coeffs_.size()) throw InvalidInput("Bell functional: coefficient count mismatch");
  if (!all_finite(coeffs)) throw InvalidInput("Bell functional coefficients must be finite");
  coeffs_ = std::move(coeffs);
}

void ClassicalOwStrategy::validate(std::size_t x_count, std::size_t y_count) const {
  if (k < 1) throw InvalidInput("message alphabet must be positive");
  if (alice_sign.size() != x_count || alice_msg.size() != x_count ||
      bob_sign.size() != y_count * static_cast<std::size_t>(k))
    throw InvalidInput("classical strategy shape mismatch");
  for (std::size_t x = 0; x < x_count; ++x) {
    if (alice_msg[x] < 0 || alice_msg[x] >= k) throw InvalidInput("message out of range");
    if (alice_sign[x] != 1 && alice_sign[x] != -1) throw InvalidInput("Alice sign must be +-1");
  }
  for (int b : bob_sign)
    if (b != 1 && b != -1) throw InvalidInput("Bob sign must be +-1");
}

XorGame make_xor_game(const RealMatrix& pi, const RealMatrix& f) {
  require_same_shape(pi, f, "pi and f");
  double total = 0.0;
  for (double p : pi.data()) {
    if (!std::isfinite(p) || p < 0.0) throw InvalidInput("pi must be a nonnegative distribution");
    total += p;
  }
  if (std::abs(total - 1.0) > XorGame::kNormTolerance) throw InvalidInput("pi must sum to 1");
  for (double s : f.data())
    if (s != 1.0 && s != -1.0) throw InvalidInput("f entries must be +-1");

  RealMatrix t(pi.rows(), pi.cols());
  for (std::size_t x = 0; x < pi.rows(); ++x)
    for (std::size_t y = 0; y < pi.cols(); ++y) t(x, y) = pi(x, y) * f(x, y);
  return XorGame::from_coefficients(std::move(t));
}

NormalizedGame normalize_coefficients(const RealMatrix& raw) {
  if (!all_finite(raw.data())) throw InvalidInput("coefficients must be finite");
  const double n = abs_sum(raw.data());
  if (n == 0.0) throw InvalidInput("degenerate game: all coefficients are zero");
  // Inputs that already satisfy the game invariant are returned untouched, so
  // normalization is idempotent bit for bit.
  if (std::abs(n - 1.0) <= XorGame::kNormTolerance) return {XorGame::from_coefficients(raw), 1.0};
  RealMatrix t(raw.rows(), raw.cols());
  for (std::size_t x = 0; x < raw.rows(); ++x)
    for (std::size_t y = 0; y < raw.cols(); ++y) t(x, y) = raw(x, y) / n;
  return {XorGame::from_coefficients(std::move(t)), n};
}

double evaluate_correlation(const XorGame& g, const CorrelationMatrix& c) {
  require_same_shape(g.coefficients(), c.gamma(), "game and correlation");
  double v = 0.0;
  const auto t = g.coefficients().data();
  const auto gamma = c.gamma().data();
  for (std::size_t i = 0; i < t.size(); ++i) v += t[i] * gamma[i];
  return v;
}

double evaluate_classical_ow(const XorGame& g, const ClassicalOwStrategy& s) {
  s.validate(g.x_count(), g.y_count());
  double v = 0.0;
  for (std::size_t x = 0; x < g.x_count(); ++x) {
    const int m = s.alice_msg[x];
    double row = 0.0;
    for (std::size_t y = 0; y < g.y_count(); ++y) row += g.t(x, y) * s.bob(y, m);
    v += s.alice_sign[x] * row;
  }
  return v;
}

double evaluate_signs(const XorGame& g, std::span<const int> t, std::span<const int> s) {
  if (t.size() != g.x_count() || s.size() != g.y_count()) throw InvalidInput("sign vector size mismatch");
  double v = 0.0;
  for (std::size_t x = 0; x < g.x_count(); ++x) {
    double row = 0.0;
    for (std::size_t y = 0; y < g.y_count(); ++y) row += g.t(x, y) * s[y];
    v += t[x] * row;
  }
  return v;
}

nlohmann::json game_to_json(const XorGame& g) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t x = 0; x < g.x_count(); ++x) {
    auto r = g.coefficients().row(x);
    rows.push_back(std::vector<double>(r.begin(), r.end()));
  }
  return {{"x_count", g.x_count()}, {"y_count", g.y_count()}, {"t", rows}};
}

XorGame game_from_json(const nlohmann::json& j) {
  try {
    const auto xc = j.at("x_count").get<std::size_t>();
    const auto yc = j.at("y_count").get<std::size_t>();
    const auto rows = j.at("t").get<std::vector<std::vector<double>>>();
    if (rows.size() != xc) throw InvalidInput("game JSON: row count does not match x_count");
    for (const auto& r : rows)
      if (r.size() != yc) throw InvalidInput("game JSON: row length does not match y_count");
    return XorGame::from_coefficients(RealMatrix::from_rows(rows));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("game JSON: ") + e.what());
  }
}

nlohmann::json bell_to_json(const BellFunctional& b) {
  return {{"x_count", b.x_count()},
          {"y_count", b.y_count()},
          {"a_count", b.a_count()},
          {"b_count", b.b_count()},
          {"coeffs", std::vector<double>(b.coeffs().begin(), b.coeffs().end())}};
}

BellFunctional bell_from_json(const nlohmann::json& j) {
  try {
    return BellFunctional(j.at("x_count").get<std::size_t>(), j.at("y_count").get<std::size_t>(),
                          j.at("a_count").get<std::size_t>(), j.at("b_count").get<std::size_t>(),
                          j.at("coeffs").get<std::vector<double>>());
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("Bell functional JSON: ") + e.what());
  }
}

nlohmann::json classical_strategy_to_json(const ClassicalOwStrategy& s) {
  return {{"k", s.k}, {"alice_sign", s.alice_sign}, {"alice_msg", s.alice_msg}, {"bob_sign", s.bob_sign}};
}

XorGame chsh_game() {
  return XorGame::from_coefficients(RealMatrix::from_rows({{0.25, 0.25}, {0.25, -0.25}}));
}

}  // namespace xorcomm
