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

#ifndef FAKEWIDTH_TRICKSETS_HPP_
#define FAKEWIDTH_TRICKSETS_HPP_

#include <optional>
#include <variant>

#include "fakewidth/vec.hpp"

namespace fakewidth {

/*
 * A trick set T is the menu of corruption directions available to an
 * insider: a fake is x + r*t with t in T. The detectability analysis
 * runs on the functional
 *
 *     scaled_support(T, x) = sup_{t in T} <x, t / ||t||^2>,
 *
 * whose expectation over the data law is the scaled width of T.
 */

// All vectors with ||t|| >= min_norm.
struct NormThreshold {
  int n = 0;
  double min_norm = 1.0;
};

// All s-sparse vectors with ||t|| >= min_norm.
struct SparseNorm {
  int n = 0;
  int sparsity = 1;
  double min_norm = 1.0;
};

// Vectors supported exactly on one of the listed index sets, with a
// per-support minimum norm.
struct SupportFamilyEntry {
  SupportSet support;    // sorted ascending, 0-based
  double min_norm = 1.0;
};

struct SupportFamily {
  int n = 0;
  std::vector<SupportFamilyEntry> entries;
};

// Unit vectors whose first coordinate has magnitude exactly 1/2. Not
// closed under coordinate sign patterns with norm replacement, so the
// sign-flip construction does not apply; it is the standard example of a
// set whose scaled width wildly overestimates the detectability radius.
struct HalfCoordinate {
  int n = 0;
};

using TrickSet = std::variant<NormThreshold, SparseNorm, SupportFamily, HalfCoordinate>;

int dim(const TrickSet& set);

// Throws std::invalid_argument on malformed parameters (n < 1, sparsity
// out of range, non-positive thresholds, unsorted/duplicate/out-of-range
// supports, HalfCoordinate with n < 2, ...).
void validate(const TrickSet& set);

// True for the variants closed under support-preserving sign patterns and
// norm increase (NormThreshold, SparseNorm, SupportFamily).
bool is_highly_symmetric(const TrickSet& set);

// inf ||t|| over T.
double inradius(const TrickSet& set);

// sup_{t in T} <x, t/||t||^2> in closed form per variant.
double scaled_support(const TrickSet& set, const Vector& x);

// Membership test. Norm comparisons allow `tol` slack; supports are
// matched exactly (an entry of 0.0 is off-support, anything else is on).
bool membership(const TrickSet& set, const Vector& t, double tol);

// The flip set I*(x): the support maximizing ||x_I|| / min_norm(I) over
// the variant's implicit support family, ties broken by lexicographically
// smallest support. Depends on x only through |x| (measurability is what
// keeps the fake distribution identical to the real one for coordinate-
// symmetric laws). Empty when x = 0. Throws for HalfCoordinate.
SupportSet sign_flip_support(const TrickSet& set, const Vector& x);

struct FakeSample {
  Vector fake;   // the corrupted observation x + r*trick
  Vector trick;  // the trick actually used, a member of T
};

// Empty optional = the adversary gives up on this x.
using AdversaryOutcome = std::optional<FakeSample>;

// Sign-flipping construction: flip the signs of x on I*(x) when a trick
// realizing that flip exists in T at radius r, i.e. when
// ||2 x_{I*}|| >= r * min_norm(I*). The fake flips signs exactly;
// trick = -2 x_{I*} / r reproduces it up to floating-point rounding.
// Throws std::invalid_argument for r <= 0 or non-highly-symmetric sets.
AdversaryOutcome sign_flip_candidate(const TrickSet& set, const Vector& x, double r);

// A convenient fixed member of T (used as the default fixed trick):
// smallest-norm representative with the canonical support.
Vector canonical_trick(const TrickSet& set);

}  // namespace fakewidth

#endif  // FAKEWIDTH_TRICKSETS_HPP_
