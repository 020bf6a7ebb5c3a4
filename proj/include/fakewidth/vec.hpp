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

#ifndef FAKEWIDTH_VEC_HPP_
#define FAKEWIDTH_VEC_HPP_

#include <cstddef>
#include <vector>

namespace fakewidth {

using Vector = std::vector<double>;

// Index set into a Vector, 0-based, strictly increasing. (Serialized
// configs use 1-based indices; the conversion happens at the JSON layer.)
using SupportSet = std::vector<int>;

double dot(const Vector& a, const Vector& b);

// Euclidean norm, accumulated in index order so that equal index sets
// always produce bit-identical sums.
double norm2(const Vector& x);
double norm2_squared(const Vector& x);

// Norm of the restriction x_I. `support` must be sorted ascending.
double norm2_on(const Vector& x, const SupportSet& support);

// Indices of nonzero entries, ascending.
SupportSet nonzero_support(const Vector& x);

bool all_finite(const Vector& x);

}  // namespace fakewidth

#endif  // FAKEWIDTH_VEC_HPP_
