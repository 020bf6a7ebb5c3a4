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

#include "fakewidth/distributions.hpp"

#include <stdexcept>

namespace fakewidth {

int dim(const DataDistribution& dist) {
  return std::visit([](const auto& d) { return d.n; }, dist);
}

void validate(const DataDistribution& dist) {
  if (dim(dist) < 1) throw std::invalid_argument("distribution needs n >= 1");
}

bool has_bounded_coordinates(const DataDistribution& dist) {
  return std::holds_alternative<IIDSymmetricBounded>(dist);
}

void sample_into(const DataDistribution& dist, const SeedSpec& seed, std::uint64_t trial_index,
                 Vector& out) {
  const auto n = static_cast<std::size_t>(dim(dist));
  out.resize(n);
  std::mt19937_64 eng = engine_for(seed, trial_index);
  if (std::holds_alternative<StandardGaussian>(dist)) {
    fill_standard_normal(eng, out.data(), n);
    return;
  }
  const auto& b = std::get<IIDSymmetricBounded>(dist);
  if (b.kind == BoundedKind::rademacher) {
    for (std::size_t i = 0; i < n; ++i) out[i] = (eng() >> 63) ? 1.0 : -1.0;
  } else {
    for (std::size_t i = 0; i < n; ++i) out[i] = 2.0 * uniform01(eng) - 1.0;
  }
}

Vector sample(const DataDistribution& dist, const SeedSpec& seed, std::uint64_t trial_index) {
  Vector out;
  sample_into(dist, seed, trial_index, out);
  return out;
}

}  // namespace fakewidth
