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

#ifndef XORCOMM_GAME_HPP
#define XORCOMM_GAME_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace xorcomm {

/// Raised when an exact enumeration would exceed its work guard.
class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised for malformed or inconsistent inputs.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// sign(0) is +1 throughout the library.
inline int sign_of(double v) { return v < 0.0 ? -1 : 1; }

/// Dense row-major real matrix.
class RealMatrix {
 public:
  RealMatrix() = default;
  RealMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  RealMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);
  static RealMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> data() const { return data_; }
  std::vector<double>& mutable_data() { return data_; }

  bool operator==(const RealMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Coefficients T_{x,y} = pi(x,y) f(x,y) of a XOR game, with sum |T| = 1.
///
/// Immutable once built. Construct through make_xor_game, normalize_coefficients
/// or XorGame::from_coefficients, all of which enforce the normalization.
class XorGame {
 public:
  static constexpr double kNormTolerance = 1e-12;

  /// Validates finiteness and sum |t| = 1 within kNormTolerance.
  static XorGame from_coefficients(RealMatrix t);

  std::size_t x_count() const { return t_.rows(); }
  std::size_t y_count() const { return t_.cols(); }
  double t(std::size_t x, std::size_t y) const { return t_(x, y); }
  const RealMatrix& coefficients() const { return t_; }

  double pi(std::size_t x, std::size_t y) const;
  int f(std::size_t x, std::size_t y) const { return sign_of(t_(x, y)); }

 private:
  explicit XorGame(RealMatrix t) : t_(std::move(t)) {}
  RealMatrix t_;
};

/// Correlation table gamma_{x,y} = E(ab|x,y), entries in [-1, 1].
class CorrelationMatrix {
 public:
  explicit CorrelationMatrix(RealMatrix gamma);
  const RealMatrix& gamma() const { return gamma_; }

 private:
  RealMatrix gamma_;
};

/// Bell functional coefficients B_{a,b,x,y}, stored flat in (a, b, x, y)
/// row-major order.
class BellFunctional {
 public:
  BellFunctional(std::size_t x_count, std::size_t y_count, std::size_t a_count,
                 std::size_t b_count);
  BellFunctional(std::size_t x_count, std::size_t y_count, std::size_t a_count,
                 std::size_t b_count, std::vector<double> coeffs);

  std::size_t x_count() const { return x_count_; }
  std::size_t y_count() const { return y_count_; }
  std::size_t a_count() const { return a_count_; }
  std::size_t b_count() const { return b_count_; }

  std::size_t index(std::size_t a, std::size_t b, std::size_t x, std::size_t y) const {
    return ((a * b_count_ + b) * x_count_ + x) * y_count_ + y;
  }
  double operator()(std::size_t a, std::size_t b, std::size_t x, std::size_t y) const {
    return coeffs_[index(a, b, x, y)];
  }
  double& operator()(std::size_t a, std::size_t b, std::size_t x, std::size_t y) {
    return coeffs_[index(a, b, x, y)];
  }
  std::span<const double> coeffs() const { return coeffs_; }

 private:
  std::size_t x_count_, y_count_, a_count_, b_count_;
  std::vector<double> coeffs_;
};

/// Deterministic one-way protocol: Alice answers alice_sign[x] and sends
/// alice_msg[x] in [0, k); Bob answers bob_sign(y, message).
struct ClassicalOwStrategy {
  int k = 1;
  std::vector<int> alice_sign;
  std::vector<int> alice_msg;
  std::vector<int> bob_sign;  // y-major: bob_sign[y * k + m]

  int bob(std::size_t y, int m) const { return bob_sign[y * static_cast<std::size_t>(k) + m]; }
  /// Throws InvalidInput if messages are out of range or signs are not +-1.
  void validate(std::size_t x_count, std::size_t y_count) const;
};

struct NormalizedGame {
  XorGame game;
  double normalizer;  // N = sum |raw|
};

XorGame make_xor_game(const RealMatrix& pi, const RealMatrix& f);
NormalizedGame normalize_coefficients(const RealMatrix& raw);

/// sum_{x,y} t[x][y] * gamma[x][y].
double evaluate_correlation(const XorGame& g, const CorrelationMatrix& c);

/// Bias sum_{x,y} T_{x,y} a(x) b(y, m(x)) of a deterministic one-way protocol.
double evaluate_classical_ow(const XorGame& g, const ClassicalOwStrategy& s);

/// Signed bias sum T_{x,y} t_x s_y for +-1 sign vectors.
double evaluate_signs(const XorGame& g, std::span<const int> t, std::span<const int> s);

// JSON: {"x_count": int, "y_count": int, "t": [[...], ...]}
nlohmann::json game_to_json(const XorGame& g);
XorGame game_from_json(const nlohmann::json& j);

// JSON: {"x_count","y_count","a_count","b_count","coeffs": flat (a,b,x,y)}
nlohmann::json bell_to_json(const BellFunctional& b);
BellFunctional bell_from_json(const nlohmann::json& j);

nlohmann::json classical_strategy_to_json(const ClassicalOwStrategy& s);

/// The CHSH game, t = [[.25,.25],[.25,-.25]].
XorGame chsh_game();

}  // namespace xorcomm

#endif  // XORCOMM_GAME_HPP
