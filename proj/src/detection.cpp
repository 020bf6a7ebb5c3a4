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

#include "fakewidth/detection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fakewidth {

namespace {

void check_radius(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw std::invalid_argument("detection radius must be positive and finite");
  }
}

Verdict verdict_from(double statistic, double r) {
  Verdict v;
  v.statistic = statistic;
  v.is_fake = !(statistic < 0.5 * r);
  return v;
}

double focus_statistic(const FocusSet& focus, const Vector& x) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& s : focus.points) best = std::max(best, dot(x, s));
  return best;
}

}  // namespace

Verdict proximity_verdict(const TrickSet& set, double r, const Vector& x) {
  check_radius(r);
  return verdict_from(scaled_support(set, x), r);
}

Verdict focused_verdict(const FocusSet& focus, double r, const Vector& x) {
  check_radius(r);
  return verdict_from(focus_statistic(focus, x), r);
}

double detector_statistic(const Detector& det, const Vector& x) {
  if (const auto* p = std::get_if<ProximityDetector>(&det)) return scaled_support(p->set, x);
  return focus_statistic(std::get<FocusedDetector>(det).focus, x);
}

Verdict evaluate_at(const Detector& det, double r, const Vector& x) {
  check_radius(r);
  return verdict_from(detector_statistic(det, x), r);
}

}  // namespace fakewidth
