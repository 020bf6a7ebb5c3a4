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

#ifndef FAKEWIDTH_WIDTHS_HPP_
#define FAKEWIDTH_WIDTHS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fakewidth/distributions.hpp"
#include "fakewidth/tricksets.hpp"

namespace fakewidth {

enum class WidthKind { width, scaled_width };

struct WidthEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample stdev / sqrt(samples)
  std::int64_t samples = 0;
  WidthKind kind = WidthKind::scaled_width;
};

// A finite, origin-symmetric list of focus directions S. The focused
// detector it induces tests sup_{s in S} <x, s> against r/2 (equivalently
// max_h <x,h>/||h||^2 over h = s/||s||^2), and w(S) = E sup <X, s> is an
// upper bound for the focused width whenever S dominates T in the sense
// of the polar condition below.
struct FocusSet {
  std::vector<Vector> points;
};

// Throws std::invalid_argument unless `points` is non-empty, all of one
// dimension, nonzero, finite, and closed under negation (exact match).
void validate(const FocusSet& focus);

// Mean of scaled_support(T, X_i) over N independent draws.
WidthEstimate estimate_scaled_width(const TrickSet& set, const DataDistribution& dist,
                                    std::int64_t samples, const SeedSpec& seed,
                                    unsigned workers = 1);

// Mean of sup_{s in S} <X_i, s>.
WidthEstimate estimate_width(const FocusSet& focus, const DataDistribution& dist,
                             std::int64_t samples, const SeedSpec& seed, unsigned workers = 1);

// Closed forms (standard Gaussian data): for the norm-threshold set the
// scaled width is E||X||_2 / min_norm = sqrt(2)*Gamma((n+1)/2)/Gamma(n/2)
// / min_norm, evaluated through lgamma; the half-coordinate set gives
// sqrt(2/pi)/2 + (sqrt(3)/2) * E||X_{2..n}||_2. Other variants: nullopt.
std::optional<double> analytic_scaled_width(const TrickSet& set);

// E||X||_2 for X ~ N(0, I_n), via log-gamma (exact to rounding for all n).
double expected_gaussian_norm(int n);

// Polar condition: for every t in T there is s in S with <t, s> >= 1.
// Decided analytically where a certificate exists; "undecidable" is a
// distinct outcome from "violated" and carries no witness.
enum class PolarStatus { satisfied, violated, undecidable };

struct PolarCheck {
  PolarStatus status = PolarStatus::undecidable;
  std::optional<Vector> witness;  // a member of T with sup_s <t,s> < 1
  std::string detail;
};

PolarCheck verify_polar_condition(const TrickSet& set, const FocusSet& focus);

// Minimum of estimate_width over the candidates whose polar check is
// `satisfied` (only a certified candidate may bound the focused width).
// All candidates are estimated on the same draws. Throws
// std::invalid_argument when the list is empty or no candidate passes.
struct FocusedBound {
  WidthEstimate estimate;
  std::size_t chosen_index = 0;             // into the original candidate list
  std::vector<PolarCheck> checks;           // one per candidate
  std::vector<std::optional<WidthEstimate>> widths;  // estimates for certified candidates
};

FocusedBound focused_width_upper_bound(const TrickSet& set,
                                       const std::vector<FocusSet>& candidates,
                                       const DataDistribution& dist, std::int64_t samples,
                                       const SeedSpec& seed, unsigned workers = 1);

}  // namespace fakewidth

#endif  // FAKEWIDTH_WIDTHS_HPP_
