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

#ifndef FAKEWIDTH_RNG_HPP_
#define FAKEWIDTH_RNG_HPP_

#include <cstdint>
#include <random>

namespace fakewidth {

/*
 * Counter-based seeding. Every Monte Carlo trial gets its own engine,
 * seeded by hashing (master seed, stream id, trial index) through
 * splitmix64. Identical (seed, stream, trial) triples therefore produce
 * bit-identical draws no matter how trials are scheduled across worker
 * threads, which is what makes every estimator in this library
 * reproducible at the byte level.
 */

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(a) ^ (b * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull));
}

// Master seed plus a derived stream id. Sub-streams keep the arms of an
// experiment (real draws, calibration draws, pilot runs, ...) independent
// while staying a pure function of the master seed.
struct SeedSpec {
  std::uint64_t master = 0;
  std::uint64_t stream = 0;

  SeedSpec substream(std::uint64_t id) const { return SeedSpec{master, mix64(stream, id)}; }
};

inline std::mt19937_64 engine_for(const SeedSpec& seed, std::uint64_t trial_index) {
  return std::mt19937_64(mix64(mix64(seed.master, seed.stream), trial_index));
}

// Uniform on [0, 1), 53-bit resolution.
inline double uniform01(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// Uniform on (0, 1]; never zero, so log() below is always finite.
inline double uniform01_open(std::mt19937_64& eng) {
  return static_cast<double>((eng() >> 11) + 1) * 0x1.0p-53;
}

// Box-Muller pair. Spelled out here (rather than std::normal_distribution)
// so the byte-level output does not depend on standard library internals.
void fill_standard_normal(std::mt19937_64& eng, double* out, std::size_t n);

}  // namespace fakewidth

#endif  // FAKEWIDTH_RNG_HPP_
