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

#include "xorcomm/reference.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <vector>

namespace xorcomm::reference {

namespace {

// Advances a mixed-radix counter; false once it wraps around.
bool next(std::vector<int>& digits, int radix) {
  for (int& d : digits) {
    if (++d < radix) return true;
    d = 0;
  }
  return false;
}

}  // namespace

double classical_value(const RealMatrix& t) {
  std::vector<int> bits(t.rows(), 0);
  double best = 0.0;
  do {
    double v = 0.0;
    for (std::size_t y = 0; y < t.cols(); ++y) {
      double c = 0.0;
      for (std::size_t x = 0; x < t.rows(); ++x) c += (bits[x] ? -1.0 : 1.0) * t(x, y);
      v += std::abs(c);
    }
    best = std::max(best, v);
  } while (next(bits, 2));
  return best;
}

double ow_classical_value(const RealMatrix& t, int k) {
  std::vector<int> opt(t.rows(), 0);
  std::vector<double> col(t.cols());
  double best = 0.0;
  do {
    double v = 0.0;
    for (int m = 0; m < k; ++m) {
      std::fill(col.begin(), col.end(), 0.0);
      for (std::size_t x = 0; x < t.rows(); ++x) {
        if (opt[x] / 2 != m) continue;
        const double s = opt[x] % 2 ? -1.0 : 1.0;
        for (std::size_t y = 0; y < t.cols(); ++y) col[y] += s * t(x, y);
      }
      for (double c : col) v += std::abs(c);
    }
    best = std::max(best, v);
  } while (next(opt, 2 * k));
  return best;
}

double bell_classical_value(const BellFunctional& b) {
  std::vector<int> alice(b.x_count(), 0);
  double best = 0.0;
  do {
    double plus = 0.0, minus = 0.0;
    for (std::size_t y = 0; y < b.y_count(); ++y) {
      double hi = -INFINITY, lo = INFINITY;
      for (std::size_t o = 0; o < b.b_count(); ++o) {
        double s = 0.0;
        for (std::size_t x = 0; x < b.x_count(); ++x) s += b(static_cast<std::size_t>(alice[x]), o, x, y);
        hi = std::max(hi, s);
        lo = std::min(lo, s);
      }
      plus += hi;
      minus -= lo;
    }
    best = std::max({best, plus, minus});
  } while (next(alice, static_cast<int>(b.a_count())));
  return best;
}

std::uint64_t compute_M(int n) {
  const std::size_t nn = static_cast<std::size_t>(n);
  std::vector<int> x(nn, 0), z(nn, 0), y(nn * nn, 0);
  std::uint64_t total = 0;
  do {
    do {
      do {
        long s = 0;
        for (std::size_t i = 0; i < nn; ++i)
          for (std::size_t j = 0; j < nn; ++j)
            s += (x[i] ? -1 : 1) * (z[j] ? -1 : 1) * (y[i * nn + j] ? -1 : 1);
        total += static_cast<std::uint64_t>(std::labs(s));
      } while (next(y, 2));
    } while (next(z, 2));
  } while (next(x, 2));
  return total;
}

}  // namespace xorcomm::reference
