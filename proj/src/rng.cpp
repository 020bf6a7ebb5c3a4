// Copyright 2026 fakewidth authors.
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

#include "fakewidth/rng.hpp"

#include <cmath>

namespace fakewidth {

void fill_standard_normal(std::mt19937_64& eng, double* out, std::size_t n) {
  constexpr double two_pi = 6.283185307179586476925286766559;
  std::size_t i = 0;
  while (i < n) {
    const double u1 = uniform01_open(eng);
    const double u2 = uniform01(eng);
    const double radius = std::sqrt(-2.0 * std::log(u1));
    out[i++] = radius * std::cos(two_pi * u2);
    if (i < n) out[i++] = radius * std::sin(two_pi * u2);
  }
}

}  // namespace fakewidth
