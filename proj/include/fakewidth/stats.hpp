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

#ifndef FAKEWIDTH_STATS_HPP_
#define FAKEWIDTH_STATS_HPP_

#include <cstdint>
#include <vector>

namespace fakewidth {

// sqrt(p(1-p)/n) with p = k/n.
double binomial_std_error(std::int64_t k, std::int64_t n);

// Survival function of the Kolmogorov distribution,
// Q(lambda) = 2 * sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2).
double kolmogorov_tail(double lambda);

struct KsResult {
  double statistic = 0.0;  // sup |F_a - F_b|
  double p_value = 1.0;    // asymptotic two-sample p-value
};

// Two-sample Kolmogorov-Smirnov test. Copies and sorts its inputs.
KsResult two_sample_ks(std::vector<double> a, std::vector<double> b);

// p-quantile of v (linear interpolation between order statistics).
double quantile(std::vector<double> v, double p);

// Best cutoff for the one-sided test "Real iff statistic < c".
//
// Rates are measured against a fixed trial count: fpr = #{real >= c} /
// trials, fnr = #{fake < c} / trials, where `fake_stats` holds only the
// trials in which the adversary produced a fake (give-ups count as
// detected). Scans every distinct observed value plus +inf and returns
// the cutoff minimizing max(fpr, fnr); ties go to the first (smallest)
// cutoff scanned, so the result is deterministic.
struct ThresholdScan {
  double threshold = 0.0;
  double fpr = 0.0;
  double fnr = 0.0;
  double max_error = 0.0;
};

ThresholdScan best_threshold(const std::vector<double>& real_stats,
                             const std::vector<double>& fake_stats, std::int64_t trials);

// Rates for a fixed cutoff, same accounting as best_threshold.
ThresholdScan rates_at_threshold(const std::vector<double>& real_stats,
                                 const std::vector<double>& fake_stats, std::int64_t trials,
                                 double threshold);

}  // namespace fakewidth

#endif  // FAKEWIDTH_STATS_HPP_
