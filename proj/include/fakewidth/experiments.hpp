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

#ifndef FAKEWIDTH_EXPERIMENTS_HPP
#define FAKEWIDTH_EXPERIMENTS_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fakewidth/adversary.hpp"
#include "fakewidth/detection.hpp"
#include "fakewidth/distributions.hpp"
#include "fakewidth/rng.hpp"
#include "fakewidth/stats.hpp"
#include "fakewidth/tricksets.hpp"
#include "fakewidth/widths.hpp"

namespace fakewidth {

// Error rates of one detector against one adversary at a fixed radius.
// The fake arm corrupts the same real draws the detector is scored on, so
// paired rates move together as the radius changes; give-ups count as
// adversary failures (never as false negatives).
struct ErrorRates {
  double fpr = 0.0;         // real draws flagged fake / trials
  double fnr = 0.0;         // produced fakes passing as real / trials
  double success_rate = 0.0;  // non-give-up fraction
  double fpr_se = 0.0;
  double fnr_se = 0.0;
  double success_se = 0.0;
  std::int64_t trials = 0;
};

ErrorRates error_rates(const TrickSet& set, const DataDistribution& dist, double r,
                       const Detector& detector, const AdversaryStrategy& adversary,
                       std::int64_t trials, const SeedSpec& seed, unsigned workers = 1);

// One member of the detector battery used for empirical lower bounds:
// a scalar statistic with a pass threshold ("real" iff statistic < c).
struct BatteryMember {
  std::string name;
  double threshold = 0.0;
  double fpr = 0.0;
  double fnr = 0.0;
};

struct BatteryResult {
  std::vector<BatteryMember> members;
  double success_rate = 0.0;
  double min_max_error = 1.0;  // min over members of max(fpr, fnr)
  std::int64_t trials = 0;
};

// Evaluates a fixed battery of simple tests against the adversary at
// radius r: the proximity statistic at threshold r/2, the focused
// statistic at r/2 when a focus set is supplied, and the first-coordinate
// and norm statistics both at a calibrated quantile threshold (drawn from
// a disjoint calibration stream at the given level) and at the
// best-separating threshold found in hindsight. A small min_max_error
// means some member separates real from fake; a value near 1/2 means the
// battery cannot tell them apart.
BatteryResult battery_error_rates(const TrickSet& set, const DataDistribution& dist, double r,
                                  const AdversaryStrategy& adversary, std::int64_t trials,
                                  const SeedSpec& seed,
                                  const std::optional<FocusSet>& focus = std::nullopt,
                                  double level = 0.1, unsigned workers = 1);

// Raised when the radius search cannot bracket the detectability
// threshold on the supplied grid; `diagnostics()` describes the grid and
// the rates observed at its ends.
class bracketing_error : public std::runtime_error {
 public:
  bracketing_error(const std::string& what, std::string diagnostics)
      : std::runtime_error(what), diagnostics_(std::move(diagnostics)) {}
  const std::string& diagnostics() const { return diagnostics_; }

 private:
  std::string diagnostics_;
};

struct BracketOptions {
  std::vector<double> grid;  // strictly increasing radii; empty = automatic
  double level = 0.1;
  int bisection_steps = 8;
  std::optional<FocusSet> focus;  // adds the focused detector to the search and battery
  std::optional<AdversaryStrategy> adversary;  // default: sign flip (fixed trick when
                                               // the set is not coordinate-symmetric)
};

struct BracketResult {
  double r_lower = 0.0;  // largest radius where the whole battery still fails
  double r_upper = 0.0;  // smallest radius where a detector reaches the level
  std::vector<double> grid;
  double level = 0.1;
  std::int64_t trials = 0;
  WidthEstimate scaled_width;           // pilot estimate used to build the grid
  std::vector<std::string> battery;     // member names backing r_lower
};

// Empirically brackets the detectability radius: r_upper is the smallest
// radius (grid scan plus bisection) at which the proximity test — or the
// focused test, when supplied — holds both error rates at or below the
// level; r_lower is the largest radius at which no battery member can push
// max(fpr, fnr) below 0.5 - level against the adversary. Throws
// bracketing_error when the grid cannot produce r_lower <= r_upper.
BracketResult bracket_detectability_radius(const TrickSet& set, const DataDistribution& dist,
                                           std::int64_t trials, const SeedSpec& seed,
                                           const BracketOptions& options = {},
                                           unsigned workers = 1);

struct SweepConfig {
  TrickSet set;
  DataDistribution dist;
  Detector detector;
  AdversaryStrategy adversary;
  std::vector<double> radii;  // strictly increasing, all positive
  std::int64_t trials = 0;    // at least 100
  std::uint64_t master_seed = 0;
  double u = 4.0;  // concentration parameter of the radius formulas
};

void validate(const SweepConfig& config);

struct SweepRow {
  double r = 0.0;
  ErrorRates rates;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::uint64_t master_seed = 0;
  std::string config_hash;  // filled by callers that know the wire form
};

// One error_rates row per radius. Every radius scores the same underlying
// real draws, so proximity false-positive curves are non-increasing in r
// and rows are reproducible for a fixed master seed regardless of the
// worker count.
SweepResult sweep(const SweepConfig& config, unsigned workers = 1);

struct InvarianceReport {
  double success_probability = 0.0;
  bool exact = false;               // exhaustive pushforward route was used
  double max_pmf_discrepancy = 0.0; // exact route: must be 0
  std::vector<std::string> labels;  // statistic names for the KS route
  std::vector<KsResult> ks;         // matching two-sample tests
};

// Checks that sign flipping preserves the law of the data at radius r.
// Rademacher data in dimension <= 10 is checked exactly by enumerating all
// sign patterns; continuous data is checked with two-sample
// Kolmogorov-Smirnov tests on the norm and five fixed random projections,
// with real and fake arms drawn from disjoint streams. Refuses (throws
// std::invalid_argument) unless the estimated success probability at r is
// at least 0.999, since the comparison conditions on success.
InvarianceReport invariance_check(const TrickSet& set, const DataDistribution& dist, double r,
                                  std::int64_t trials, const SeedSpec& seed, unsigned workers = 1);

}  // namespace fakewidth

#endif  // FAKEWIDTH_EXPERIMENTS_HPP
