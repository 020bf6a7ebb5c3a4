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

#include "fakewidth/vec.hpp"

#include <cmath>
#include <stdexcept>

namespace fakewidth {

double dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("dot: dimension mismatch");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double norm2_squared(const Vector& x) {
  double acc = 0.0;
  for (double v : x) acc += v * v;
  return acc;
}

double norm2(const Vector& x) { return std::sqrt(norm2_squared(x)); }

double norm2_on(const Vector& x, const SupportSet& support) {
  double acc = 0.0;
  for (int i : support) {
    const double v = x[static_cast<std::size_t>(i)];
    acc += v * v;
  }
  return std::sqrt(acc);
}

SupportSet nonzero_support(const Vector& x) {
  SupportSet out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] != 0.0) out.push_back(static_cast<int>(i));
  }
  return out;
}

bool all_finite(const Vector& x) {
  for (double v : x) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace fakewidth
