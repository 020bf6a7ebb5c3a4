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

#ifndef FAKEWIDTH_ADVERSARY_HPP
#define FAKEWIDTH_ADVERSARY_HPP

#include <cstdint>
#include <variant>

#include "fakewidth/distributions.hpp"
#include "fakewidth/rng.hpp"
#include "fakewidth/tricksets.hpp"
#include "fakewidth/vec.hpp"

namespace fakewidth {

// Flips the observed sample about the origin on the best support whenever
// the trick set allows it at the given radius; gives up otherwise. Only
// meaningful for coordinate-symmetric trick sets, where the flip preserves
// the law of the data.
struct SignFlip {
  TrickSet set;
};

// Baseline that corrupts every sample with the same trick, ignoring x.
struct FixedTrick {
  TrickSet set;
  Vector trick;
};

using AdversaryStrategy = std::variant<SignFlip, FixedTrick>;

// Throws std::invalid_argument when the strategy is self-inconsistent:
// SignFlip over a trick set that is not closed under coordinate sign
// changes, or FixedTrick whose trick is not a member of its set (checked
// with tolerance 1e-9).
void validate(const AdversaryStrategy& strategy);

// Produces a fake from the observed sample, or nothing when the strategy
// gives up. When a fake is produced, fake = x + r * trick up to rounding
// (SignFlip constructs the flip exactly and the trick from it) and trick
// is a member of the strategy's set.
// Preconditions: validate(strategy) holds, r > 0, dim(x) matches the set.
AdversaryOutcome attack(const AdversaryStrategy& strategy, const Vector& x, double r);

// Fraction of `trials` independent samples on which the strategy produces
// a fake (1.0 for FixedTrick). Deterministic in (seed, trials) and
// independent of the worker count.
double success_probability(const AdversaryStrategy& strategy, const DataDistribution& dist,
                           double r, std::int64_t trials, const SeedSpec& seed,
                           unsigned workers = 1);

}  // namespace fakewidth

#endif  // FAKEWIDTH_ADVERSARY_HPP
