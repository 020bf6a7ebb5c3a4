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

#ifndef FAKEWIDTH_DISTRIBUTIONS_HPP_
#define FAKEWIDTH_DISTRIBUTIONS_HPP_

#include <cstdint>
#include <variant>

#include "fakewidth/rng.hpp"
#include "fakewidth/vec.hpp"

namespace fakewidth {

// X ~ N(0, I_n).
struct StandardGaussian {
  int n = 0;
};

// I.i.d. symmetric bounded coordinates: +/-1 fair coin flips or uniform
// on [-1, 1]. Both are symmetric about 0 with |X_i| <= 1, the regime the
// non-Gaussian detectability bounds cover.
enum class BoundedKind { rademacher, uniform_symmetric };

struct IIDSymmetricBounded {
  int n = 0;
  BoundedKind kind = BoundedKind::rademacher;
};

using DataDistribution = std::variant<StandardGaussian, IIDSymmetricBounded>;

int dim(const DataDistribution& dist);
void validate(const DataDistribution& dist);
bool has_bounded_coordinates(const DataDistribution& dist);

// Draw the trial_index-th sample of the stream described by `seed`.
// Bit-identical for identical (seed, trial_index) regardless of call
// order or threading.
Vector sample(const DataDistribution& dist, const SeedSpec& seed, std::uint64_t trial_index);
void sample_into(const DataDistribution& dist, const SeedSpec& seed, std::uint64_t trial_index,
                 Vector& out);

}  // namespace fakewidth

#endif  // FAKEWIDTH_DISTRIBUTIONS_HPP_
