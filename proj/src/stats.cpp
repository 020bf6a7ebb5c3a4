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

#include "fakewidth/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fakewidth {

double binomial_std_error(std::int64_t k, std::int64_t n) {
  if (n <= 0) throw std::invalid_argument("binomial_std_error: n must be positive");
  const double p = static_cast<double>(k) / static_cast<double>(n);
  return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

double kolmogorov_tail(double lambda) {
  if (lambda <= 0.0) return 1.0;
  // The alternating series converges extremely fast for lambda of
  // practical size; below ~0.2 it is numerically 1 anyway.
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += sign * term;
    sign = -sign;
    if (term < 1e-16) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult two_sample_ks(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("two_sample_ks: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const auto na = static_cast<double>(a.size());
  const auto nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= v) ++i;
    while (j < b.size() && b[j] <= v) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  KsResult out;
  out.statistic = d;
  out.p_value = kolmogorov_tail(d * std::sqrt(na * nb / (na + nb)));
  return out;
}

double quantile(std::vector<double> v, double p) {
  if (v.empty()) throw std::invalid_argument("quantile: empty sample");
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("quantile: p outside [0, 1]");
  std::sort(v.begin(), v.end());
  const double pos = p * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= v.size()) return v.back();
  const double frac = pos - static_cast<double>(lo);
  return v[lo] + frac * (v[lo + 1] - v[lo]);
}

ThresholdScan rates_at_threshold(const std::vector<double>& real_stats,
                                 const std::vector<double>& fake_stats, std::int64_t trials,
                                 double threshold) {
  if (trials <= 0) throw std::invalid_argument("rates_at_threshold: trials must be positive");
  std::int64_t false_pos = 0;
  for (double v : real_stats) {
    if (v >= threshold) ++false_pos;
  }
  std::int64_t false_neg = 0;
  for (double v : fake_stats) {
    if (v < threshold) ++false_neg;
  }
  ThresholdScan out;
  out.threshold = threshold;
  out.fpr = static_cast<double>(false_pos) / static_cast<double>(trials);
  out.fnr = static_cast<double>(false_neg) / static_cast<double>(trials);
  out.max_error = std::max(out.fpr, out.fnr);
  return out;
}

ThresholdScan best_threshold(const std::vector<double>& real_stats,
                             const std::vector<double>& fake_stats, std::int64_t trials) {
  if (trials <= 0) throw std::invalid_argument("best_threshold: trials must be positive");
  // Candidate cutoffs: every distinct observed value and +inf. The rates
  // are step functions that only change at observed values, so this scan
  // is exact.
  std::vector<double> cuts;
  cuts.reserve(real_stats.size() + fake_stats.size() + 1);
  cuts.insert(cuts.end(), real_stats.begin(), real_stats.end());
  cuts.insert(cuts.end(), fake_stats.begin(), fake_stats.end());
  cuts.push_back(std::numeric_limits<double>::infinity());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<double> real_sorted = real_stats;
  std::vector<double> fake_sorted = fake_stats;
  std::sort(real_sorted.begin(), real_sorted.end());
  std::sort(fake_sorted.begin(), fake_sorted.end());

  const auto n = static_cast<double>(trials);
  ThresholdScan best;
  bool first = true;
  for (double c : cuts) {
    const auto real_below =
        std::lower_bound(real_sorted.begin(), real_sorted.end(), c) - real_sorted.begin();
    const auto fake_below =
        std::lower_bound(fake_sorted.begin(), fake_sorted.end(), c) - fake_sorted.begin();
    const double fpr = (static_cast<double>(real_sorted.size()) - static_cast<double>(real_below)) / n;
    const double fnr = static_cast<double>(fake_below) / n;
    const double max_error = std::max(fpr, fnr);
    if (first || max_error < best.max_error) {
      best = ThresholdScan{c, fpr, fnr, max_error};
      first = false;
    }
  }
  return best;
}

}  // namespace fakewidth
