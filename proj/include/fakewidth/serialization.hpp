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

#ifndef FAKEWIDTH_SERIALIZATION_HPP
#define FAKEWIDTH_SERIALIZATION_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "fakewidth/adversary.hpp"
#include "fakewidth/detection.hpp"
#include "fakewidth/distributions.hpp"
#include "fakewidth/experiments.hpp"
#include "fakewidth/tricksets.hpp"
#include "fakewidth/widths.hpp"

namespace fakewidth {

// Schema violation in a JSON config: missing or mistyped field, unknown
// kind tag, malformed support list. Semantic preconditions (dimension
// mismatches, trial minimums, ...) are reported by the operations
// themselves via std::invalid_argument instead.
class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Trick sets on the wire carry a "kind" tag: norm_threshold, sparse_norm,
// support_family (supports are 1-based index lists) or half_coordinate.
nlohmann::json to_json(const TrickSet& set);
TrickSet trick_set_from_json(const nlohmann::json& j);

// Distributions: {"kind": "gaussian"|"rademacher"|"uniform_symmetric", "n": ...}.
nlohmann::json to_json(const DataDistribution& dist);
DataDistribution distribution_from_json(const nlohmann::json& j);

nlohmann::json to_json(const FocusSet& focus);
FocusSet focus_set_from_json(const nlohmann::json& j);

// Detectors: {"kind": "proximity", "set": ...} or {"kind": "focused", "focus": ...}.
nlohmann::json to_json(const Detector& detector);
Detector detector_from_json(const nlohmann::json& j);

// Adversaries: {"kind": "sign_flip", "set": ...} or
// {"kind": "fixed_trick", "set": ..., "trick": [...]}.
nlohmann::json to_json(const AdversaryStrategy& strategy);
AdversaryStrategy adversary_from_json(const nlohmann::json& j);

// A radii grid is either an explicit array or
// {"min": ..., "max": ..., "count": ..., "scale": "geometric"|"linear"}.
std::vector<double> radii_from_json(const nlohmann::json& j);

SweepConfig sweep_config_from_json(const nlohmann::json& j);

struct WidthJob {
  TrickSet set;
  DataDistribution dist;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
};
WidthJob width_job_from_json(const nlohmann::json& j);

struct RadiusJob {
  TrickSet set;
  DataDistribution dist;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  BracketOptions options;
};
RadiusJob radius_job_from_json(const nlohmann::json& j);

struct InvarianceJob {
  TrickSet set;
  DataDistribution dist;
  double r = 0.0;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
};
InvarianceJob invariance_job_from_json(const nlohmann::json& j);

struct FocusedJob {
  TrickSet set;
  DataDistribution dist;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<FocusSet> candidates;
};
FocusedJob focused_job_from_json(const nlohmann::json& j);

// Canonical compact dump (object keys sorted) and a stable 64-bit FNV-1a
// hash of it, used to stamp outputs with the config they came from.
std::string canonical_dump(const nlohmann::json& j);
std::string config_hash_hex(const nlohmann::json& j);

}  // namespace fakewidth

#endif  // FAKEWIDTH_SERIALIZATION_HPP
