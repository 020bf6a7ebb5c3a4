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

#ifndef FAKEWIDTH_PARALLEL_HPP_
#define FAKEWIDTH_PARALLEL_HPP_

#include <cstdint>
#include <functional>

namespace fakewidth {

// Number of fixed-size blocks `total` trials split into. The block size is
// a constant, not a function of the worker count: workers race over block
// indices, results are stored per block, and callers reduce in block
// order. That is what makes every estimate identical for any worker count.
constexpr std::int64_t kTrialBlock = 1024;

std::int64_t block_count(std::int64_t total);

// Runs fn(block_index, trial_begin, trial_end) for every block. Blocks are
// disjoint and cover [0, total). With workers <= 1 the loop is inline;
// otherwise a thread pool pulls block indices from an atomic counter. The
// first exception thrown by any block is rethrown after all threads join.
void for_each_block(std::int64_t total, unsigned workers,
                    const std::function<void(std::int64_t, std::int64_t, std::int64_t)>& fn);

unsigned resolve_workers(unsigned requested);  // 0 -> hardware concurrency

}  // namespace fakewidth

#endif  // FAKEWIDTH_PARALLEL_HPP_
