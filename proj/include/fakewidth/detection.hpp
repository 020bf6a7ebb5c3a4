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

#ifndef FAKEWIDTH_DETECTION_HPP
#define FAKEWIDTH_DETECTION_HPP

#include <variant>

#include "fakewidth/tricksets.hpp"
#include "fakewidth/vec.hpp"
#include "fakewidth/widths.hpp"

namespace fakewidth {

// Outcome of running a detector on one sample. `statistic` is the value
// compared against the acceptance threshold r/2; the sample is declared
// real exactly when the statistic is strictly below r/2, so a statistic
// landing on the threshold is flagged as fake.
struct Verdict {
  double statistic = 0.0;
  bool is_fake = false;
};

// Flags x as fake when its scaled support value over the trick set reaches
// r/2. Preconditions: validate(set) holds, r > 0, dim(x) == dim(set).
Verdict proximity_verdict(const TrickSet& set, double r, const Vector& x);

// Same acceptance rule, but the statistic is the support value
// max_s <x, s> over a fixed focus set instead of a supremum over the whole
// trick set: for h = s/||s||^2 the rescaled inner product <x,h>/||h||^2
// collapses back to <x, s>.
Verdict focused_verdict(const FocusSet& focus, double r, const Vector& x);

struct ProximityDetector {
  TrickSet set;
};

struct FocusedDetector {
  FocusSet focus;
};

using Detector = std::variant<ProximityDetector, FocusedDetector>;

// The statistic the detector compares against r/2 for a sample x.
double detector_statistic(const Detector& det, const Vector& x);

// Runs the detector at radius r. Throws std::invalid_argument unless r > 0.
Verdict evaluate_at(const Detector& det, double r, const Vector& x);

}  // namespace fakewidth

#endif  // FAKEWIDTH_DETECTION_HPP
