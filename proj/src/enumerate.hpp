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

#ifndef XORCOMM_SRC_ENUMERATE_HPP
#define XORCOMM_SRC_ENUMERATE_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace xorcomm::detail {

struct EnumResult {
  double value = 0.0;
  std::vector<int> digits;
  std::uint64_t visited = 0;
};

inline constexpr std::uint64_t kTargetChunks = 64;

/// Maximizes state.value() over all digit vectors with the given radices.
///
/// The trailing digits index fixed chunks (plain mixed radix); inside a chunk
/// the leading digits follow the reflected mixed-radix Gray code, so each step
/// moves one digit by +-1 and the state is updated incrementally. Chunk layout
/// depends only on the radices, and chunk maxima are reduced in chunk order
/// (ties keep the lowest chunk), so the result is independent of the thread
/// count.
///
/// State must provide: reset(span<const int> digits), move(pos, from, to) and
/// value().
template <class MakeState>
EnumResult enumerate_gray(std::span<const int> radices, MakeState make_state) {
  const std::size_t len = radices.size();
  std::size_t split = len;
  std::uint64_t chunks = 1;
  while (split > 0 && chunks < kTargetChunks) {
    --split;
    chunks *= static_cast<std::uint64_t>(radices[split]);
  }

  std::vector<EnumResult> results(chunks);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) {
    std::vector<int> digits(len, 0);
    std::uint64_t rest = static_cast<std::uint64_t>(c);
    for (std::size_t i = split; i < len; ++i) {
      digits[i] = static_cast<int>(rest % static_cast<std::uint64_t>(radices[i]));
      rest /= static_cast<std::uint64_t>(radices[i]);
    }
    std::vector<int> dir(split, 1);
    auto state = make_state();
    state.reset(digits);
    EnumResult& best = results[c];
    best.value = state.value();
    best.digits = digits;
    best.visited = 1;
    for (;;) {
      std::size_t j = 0;
      for (; j < split; ++j) {
        const int next = digits[j] + dir[j];
        if (next >= 0 && next < radices[j]) {
          state.move(j, digits[j], next);
          digits[j] = next;
          break;
        }
        dir[j] = -dir[j];
      }
      if (j == split) break;
      ++best.visited;
      const double v = state.value();
      if (v > best.value) {
        best.value = v;
        best.digits = digits;
      }
    }
  }

  EnumResult out = results.front();
  out.visited = 0;
  for (const auto& r : results) {
    out.visited += r.visited;
    if (r.value > out.value) {
      out.value = r.value;
      out.digits = r.digits;
    }
  }
  return out;
}

/// Index of the best entry: largest value, ties to the lowest index.
template <class T, class Key>
std::size_t argmax_first(const std::vector<T>& items, Key key) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < items.size(); ++i)
    if (key(items[i]) > key(items[best])) best = i;
  return best;
}

}  // namespace xorcomm::detail

#endif  // XORCOMM_SRC_ENUMERATE_HPP
