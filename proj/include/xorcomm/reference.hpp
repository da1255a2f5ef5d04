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

// Serial brute-force versions of the enumeration kernels. They recompute every
// objective from scratch, use no symmetry reduction and no threads, and exist
// as test oracles and benchmark baselines.

#ifndef XORCOMM_REFERENCE_HPP
#define XORCOMM_REFERENCE_HPP

#include <cstdint>

#include "xorcomm/game.hpp"

namespace xorcomm::reference {

double classical_value(const RealMatrix& t);
double ow_classical_value(const RealMatrix& t, int k);
double bell_classical_value(const BellFunctional& b);
std::uint64_t compute_M(int n);

}  // namespace xorcomm::reference

#endif  // XORCOMM_REFERENCE_HPP
