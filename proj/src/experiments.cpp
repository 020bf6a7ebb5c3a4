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

#include "fakewidth/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "fakewidth/parallel.hpp"

namespace fakewidth {

namespace {

// Substream ids carving one master seed into independent arms. The real
// draws live on one fixed substream so that every radius (and every
// detector) is scored against the same underlying samples.
constexpr std::uint64_t kSubReal = 1;
constexpr std::uint64_t kSubCalibration = 2;
constexpr std::uint64_t kSubPilot = 3;
constexpr std::uint64_t kSubSuccessGate = 4;
constexpr std::uint64_t kSubInvarianceReal = 5;
constexpr std::uint64_t kSubInvarianceFake = 6;
constexpr std::uint64_t kSubProjections = 7;

void check_radius(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw std::invalid_argument("radius must be positive and finite");
  }
}

void check_level(double level) {
  if (!(level > 0.0) || !(level < 0.5)) {
    throw std::invalid_argument("level must lie strictly between 0 and 0.5");
  }
}

int detector_dim(const Detector& det) {
  if (const auto* p = std::get_if<ProximityDetector>(&det)) return dim(p->set);
  return static_cast<int>(std::get<FocusedDetector>(det).focus.points.front().size());
}

void validate_detector(const Detector& det) {
  if (const auto* p = std::get_if<ProximityDetector>(&det)) {
    validate(p->set);
  } else {
    validate(std::get<FocusedDetector>(det).focus);
  }
}

const TrickSet& adversary_set(const AdversaryStrategy& strategy) {
  if (const auto* sf = std::get_if<SignFlip>(&strategy)) return sf->set;
  return std::get<FixedTrick>(strategy).set;
}

double count_rate(std::int64_t k, std::int64_t n) {
  return static_cast<double>(k) / static_cast<double>(n);
}

struct ArmStats {
  // Per-trial statistics for the battery, indexed by trial. Fake entries
  // are meaningful only where `success` is set.
  std::vector<double> real_prox, real_norm, real_coord, real_focus;
  std::vector<double> fake_prox, fake_norm, fake_coord, fake_focus;
  std::vector<char> success;
};

ArmStats collect_arm_stats(const TrickSet& set, const DataDistribution& dist, double r,
                           const AdversaryStrategy& adversary, std::int64_t trials,
                           const SeedSpec& seed, const std::optional<FocusSet>& focus,
                           unsigned workers) {
  const auto n = static_cast<std::size_t>(trials);
  ArmStats arms;
  arms.real_prox.resize(n);
  arms.real_norm.resize(n);
  arms.real_coord.resize(n);
  arms.fake_prox.resize(n);
  arms.fake_norm.resize(n);
  arms.fake_coord.resize(n);
  arms.success.assign(n, 0);
  if (focus.has_value()) {
    arms.real_focus.resize(n);
    arms.fake_focus.resize(n);
  }
  const SeedSpec real_seed = seed.substream(kSubReal);
  const FocusSet* fs = focus.has_value() ? &*focus : nullptr;
  for_each_block(trials, workers, [&](std::int64_t, std::int64_t lo, std::int64_t hi) {
    Vector x;
    for (std::int64_t t = lo; t < hi; ++t) {
      const auto i = static_cast<std::size_t>(t);
      sample_into(dist, real_seed, static_cast<std::uint64_t>(t), x);
      arms.real_prox[i] = scaled_support(set, x);
      arms.real_norm[i] = norm2(x);
      arms.real_coord[i] = x[0];
      if (fs != nullptr) {
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& s : fs->points) best = std::max(best, dot(x, s));
        arms.real_focus[i] = best;
      }
      AdversaryOutcome out = attack(adversary, x, r);
      if (!out.has_value()) continue;
      arms.success[i] = 1;
      const Vector& f = out->fake;
      arms.fake_prox[i] = scaled_support(set, f);
      arms.fake_norm[i] = norm2(f);
      arms.fake_coord[i] = f[0];
      if (fs != nullptr) {
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& s : fs->points) best = std::max(best, dot(f, s));
        arms.fake_focus[i] = best;
      }
    }
  });
  return arms;
}

// fpr/fnr of the rule "real iff statistic < threshold" on collected arms;
// give-ups never count as false negatives.
BatteryMember member_at(const std::string& name, double threshold,
                        const std::vector<double>& real, const std::vector<double>& fake,
                        const std::vector<char>& success) {
  const auto n = static_cast<std::int64_t>(real.size());
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  for (std::size_t i = 0; i < real.size(); ++i) {
    if (!(real[i] < threshold)) ++fp;
    if (success[i] != 0 && fake[i] < threshold) ++fn;
  }
  BatteryMember m;
  m.name = name;
  m.threshold = threshold;
  m.fpr = count_rate(fp, n);
  m.fnr = count_rate(fn, n);
  return m;
}

std::vector<double> successful(const std::vector<double>& fake, const std::vector<char>& success) {
  std::vector<double> out;
  out.reserve(fake.size());
  for (std::size_t i = 0; i < fake.size(); ++i) {
    if (success[i] != 0) out.push_back(fake[i]);
  }
  return out;
}

std::string format_rates(const ErrorRates& e) {
  std::ostringstream os;
  os << "fpr=" << e.fpr << " fnr=" << e.fnr << " success=" << e.success_rate;
  return os.str();
}

}  // namespace

ErrorRates error_rates(const TrickSet& set, const DataDistribution& dist, double r,
                       const Detector& detector, const AdversaryStrategy& adversary,
                       std::int64_t trials, const SeedSpec& seed, unsigned workers) {
  if (trials < 1) throw std::invalid_argument("error_rates needs at least 1 trial");
  check_radius(r);
  validate(set);
  validate_detector(detector);
  validate(adversary);
  const int n = dim(dist);
  if (dim(set) != n || detector_dim(detector) != n || dim(adversary_set(adversary)) != n) {
    throw std::invalid_argument("set, detector, adversary and distribution dimensions differ");
  }

  struct Counts {
    std::int64_t fp = 0, fn = 0, success = 0;
  };
  std::vector<
      Counts> blocks(static_cast<std::size_t>(block_count(trials)));
  const SeedSpec real_seed = seed.substream(kSubReal);
  for_each_block(trials, workers, [&](std::int64_t b, std::int64_t lo, std::int64_t hi) {
    Vector x;
    Counts c;
    for (std::int64_t t = lo; t < hi; ++t) {
      sample_into(dist, real_seed, static_cast<std::uint64_t>(t), x);
      if (evaluate_at(detector, r, x).is_fake) ++c.fp;
      AdversaryOutcome out = attack(adversary, x, r);
      if (!out.has_value()) continue;
      ++c.success;
      if (!evaluate_at(detector, r, out->fake).is_fake) ++c.fn;
    }
    blocks[static_cast<std::size_t>(b)] = c;
  });
  Counts total;
  for (const auto& c : blocks) {
    total.fp += c.fp;
    total.fn += c.fn;
    total.success += c.success;
  }
  ErrorRates e;
  e.trials = trials;
  e.fpr = count_rate(total.fp, trials);
  e.fnr = count_rate(total.fn, trials);
  e.success_rate = count_rate(total.success, trials);
  e.fpr_se = binomial_std_error(total.fp, trials);
  e.fnr_se = binomial_std_error(total.fn, trials);
  e.success_se = binomial_std_error(total.success, trials);
  return e;
}

BatteryResult battery_error_rates(const TrickSet& set, const DataDistribution& dist, double r,
                                  const AdversaryStrategy& adversary, std::int64_t trials,
                                  const SeedSpec& seed, const std::optional<FocusSet>& focus,
                                  double level, unsigned workers) {
  if (trials < 2) throw std::invalid_argument("battery_error_rates needs at least 2 trials");
  check_radius(r);
  check_level(level);
  validate(set);
  validate(adversary);
  if (focus.has_value()) validate(*focus);
  const int n = dim(dist);
  if (dim(set) != n || dim(adversary_set(adversary)) != n ||
      (focus.has_value() && static_cast<int>(focus->points.front().size()) != n)) {
    throw std::invalid_argument("set, adversary, focus and distribution dimensions differ");
  }

  const ArmStats arms = collect_arm_stats(set, dist, r, adversary, trials, seed, focus, workers);

  // Calibration draws live on their own stream so thresholds are not fit
  // to the scored samples.
  std::vector<double> calib_norm(static_cast<std::size_t>(trials));
  std::vector<double> calib_coord(static_cast<std::size_t>(trials));
  const SeedSpec calib_seed = seed.substream(kSubCalibration);
  for_each_block(trials, workers, [&](std::int64_t, std::int64_t lo, std::int64_t hi) {
    Vector x;
    for (std::int64_t t = lo; t < hi; ++t) {
      sample_into(dist, calib_seed, static_cast<std::uint64_t>(t), x);
      calib_norm[static_cast<std::size_t>(t)] = norm2(x);
      calib_coord[static_cast<std::size_t>(t)] = x[0];
    }
  });

  BatteryResult out;
  out.trials = trials;
  {
    std::int64_t succ = 0;
    for (char s : arms.success) succ += s;
    out.success_rate = count_rate(succ, trials);
  }
  out.members.push_back(
      member_at("proximity", 0.5 * r, arms.real_prox, arms.fake_prox, arms.success));
  if (focus.has_value()) {
    out.members.push_back(
        member_at("focused", 0.5 * r, arms.real_focus, arms.fake_focus, arms.success));
  }
  out.members.push_back(member_at("coordinate_calibrated", quantile(calib_coord, 1.0 - level),
                                  arms.real_coord, arms.fake_coord, arms.success));
  out.members.push_back(member_at("norm_calibrated", quantile(calib_norm, 1.0 - level),
                                  arms.real_norm, arms.fake_norm, arms.success));
  {
    const ThresholdScan scan =
        best_threshold(arms.real_coord, successful(arms.fake_coord, arms.success), trials);
    BatteryMember m;
    m.name = "coordinate_best";
    m.threshold = scan.threshold;
    m.fpr = scan.fpr;
    m.fnr = scan.fnr;
    out.members.push_back(m);
  }
  {
    const ThresholdScan scan =
        best_threshold(arms.real_norm, successful(arms.fake_norm, arms.success), trials);
    BatteryMember m;
    m.name = "norm_best";
    m.threshold = scan.threshold;
    m.fpr = scan.fpr;
    m.fnr = scan.fnr;
    out.members.push_back(m);
  }
  out.min_max_error = 1.0;
  for (const auto& m : out.members) {
    out.min_max_error = std::min(out.min_max_error, std::max(m.fpr, m.fnr));
  }
  return out;
}

BracketResult bracket_detectability_radius(const TrickSet& set, const DataDistribution& dist,
                                           std::int64_t trials, const SeedSpec& seed,
                                           const BracketOptions& options, unsigned workers) {
  if (trials < 2) throw std::invalid_argument("bracketing needs at least 2 trials");
  check_level(options.level);
  if (options.bisection_steps < 0) {
    throw std::invalid_argument("bisection_steps must be non-negative");
  }
  validate(set);
  if (dim(set) != dim(dist)) {
    throw std::invalid_argument("set dimension does not match distribution dimension");
  }

  const double rho = inradius(set);
  const WidthEstimate width =
      estimate_scaled_width(set, dist, trials, seed.substream(kSubPilot), workers);

  std::vector<double> grid = options.grid;
  if (grid.empty()) {
    const double lo = 0.2 / rho;
    const double hi = 4.0 * (2.0 * width.mean + 1.0 / rho);
    constexpr int kPoints = 16;
    grid.resize(kPoints);
    for (int i = 0; i < kPoints; ++i) {
      grid[static_cast<std::size_t>(i)] =
          lo * std::pow(hi / lo, static_cast<double>(i) / (kPoints - 1));
    }
  } else {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (!(grid[i] > 0.0) || !std::isfinite(grid[i]) || (i > 0 && grid[i] <= grid[i - 1])) {
        throw std::invalid_argument("bracket grid must be positive and strictly increasing");
      }
    }
  }

  AdversaryStrategy adversary =
      options.adversary.has_value()
          ? *options.adversary
          : (is_highly_symmetric(set) ? AdversaryStrategy(SignFlip{set})
                                      : AdversaryStrategy(FixedTrick{set, canonical_trick(set)}));
  validate(adversary);
  if (options.focus.has_value()) {
    validate(*options.focus);
    if (static_cast<int>(options.focus->points.front().size()) != dim(set)) {
      throw std::invalid_argument("focus set dimension does not match trick set dimension");
    }
  }

  auto diag_header = [&]() {
    std::ostringstream os;
    os << "grid=[" << grid.front() << ", " << grid.back() << "] points=" << grid.size()
       << " level=" << options.level << " trials=" << trials << " scaled_width=" << width.mean
       << " inradius=" << rho;
    return os.str();
  };

  // Upper bound: smallest radius where some supplied detector meets the
  // level on both error rates.
  std::vector<Detector> detectors;
  detectors.emplace_back(ProximityDetector{set});
  if (options.focus.has_value()) detectors.emplace_back(FocusedDetector{*options.focus});

  auto upper_holds = [&](const Detector& det, double r) {
    const ErrorRates e = error_rates(set, dist, r, det, adversary, trials, seed, workers);
    return e.fpr <= options.level && e.fnr <= options.level;
  };

  double r_upper = std::numeric_limits<double>::infinity();
  for (const auto& det : detectors) {
    double candidate = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (!upper_holds(det, grid[i])) continue;
      if (i == 0) {
        candidate = grid[0];
      } else {
        double lo = grid[i - 1];
        double hi = grid[i];
        for (int s = 0; s < options.bisection_steps; ++s) {
          const double mid = 0.5 * (lo + hi);
          (upper_holds(det, mid) ? hi : lo) = mid;
        }
        candidate = hi;
      }
      break;
    }
    r_upper = std::min(r_upper, candidate);
  }
  if (!std::isfinite(r_upper)) {
    const ErrorRates tail = error_rates(set, dist, grid.back(), detectors.front(), adversary,
                                        trials, seed, workers);
    throw bracketing_error("no radius on the grid meets the detection level",
                           diag_header() + "; proximity at grid max: " + format_rates(tail));
  }

  // Lower bound: largest radius where the whole battery still fails.
  auto lower_holds = [&](double r) {
    const BatteryResult b = battery_error_rates(set, dist, r, adversary, trials, seed,
                                                options.focus, options.level, workers);
    return b.min_max_error >= 0.5 - options.level;
  };

  std::ptrdiff_t lower_idx = -1;
  for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(grid.size()) - 1; i >= 0; --i) {
    if (lower_holds(grid[static_cast<std::size_t>(i)])) {
      lower_idx = i;
      break;
    }
  }
  if (lower_idx < 0) {
    const BatteryResult head = battery_error_rates(set, dist, grid.front(), adversary, trials,
                                                   seed, options.focus, options.level, workers);
    std::ostringstream os;
    os << diag_header() << "; battery min_max at grid min: " << head.min_max_error;
    throw bracketing_error("the battery separates real from fake on the whole grid", os.str());
  }
  double r_lower = grid[static_cast<std::size_t>(lower_idx)];
  if (lower_idx + 1 < static_cast<std::ptrdiff_t>(grid.size())) {
    double lo = r_lower;
    double hi = grid[static_cast<std::size_t>(lower_idx + 1)];
    for (int s = 0; s < options.bisection_steps; ++s) {
      const double mid = 0.5 * (lo + hi);
      (lower_holds(mid) ? lo : hi) = mid;
    }
    r_lower = lo;
  }

  if (!(r_lower <= r_upper)) {
    std::ostringstream os;
    os << diag_header() << "; r_lower=" << r_lower << " r_upper=" << r_upper;
    throw bracketing_error("bracket inverted: battery still fails above the detection radius",
                           os.str());
  }

  BracketResult out;
  out.r_lower = r_lower;
  out.r_upper = r_upper;
  out.grid = std::move(grid);
  out.level = options.level;
  out.trials = trials;
  out.scaled_width = width;
  const BatteryResult at_lower = battery_error_rates(set, dist, r_lower, adversary, trials, seed,
                                                     options.focus, options.level, workers);
  out.battery.reserve(at_lower.members.size());
  for (const auto& m : at_lower.members) out.battery.push_back(m.name);
  return out;
}

void validate(const SweepConfig& config) {
  validate(config.set);
  validate_detector(config.detector);
  validate(config.adversary);
  const int n = dim(config.dist);
  if (dim(config.set) != n || detector_dim(config.detector) != n ||
      dim(adversary_set(config.adversary)) != n) {
    throw std::invalid_argument("sweep config dimensions are inconsistent");
  }
  if (config.radii.empty()) throw std::invalid_argument("sweep needs at least one radius");
  for (std::size_t i = 0; i < config.radii.size(); ++i) {
    if (!(config.radii[i] > 0.0) || !std::isfinite(config.radii[i])) {
      throw std::invalid_argument("sweep radii must be positive and finite");
    }
    if (i > 0 && config.radii[i] <= config.radii[i - 1]) {
      throw std::invalid_argument("sweep radii must be strictly increasing");
    }
  }
  if (config.trials < 100) throw std::invalid_argument("sweep needs at least 100 trials");
  if (!(config.u > 0.0)) throw std::invalid_argument("concentration parameter u must be positive");
}

SweepResult sweep(const SweepConfig& config, unsigned workers) {
  validate(config);
  SweepResult out;
  out.master_seed = config.master_seed;
  out.rows.reserve(config.radii.size());
  const SeedSpec seed{config.master_seed, 0};
  for (double r : config.radii) {
    SweepRow row;
    row.r = r;
    row.rates = error_rates(config.set, config.dist, r, config.detector, config.adversary,
                            config.trials, seed, workers);
    out.rows.push_back(row);
  }
  return out;
}

InvarianceReport invariance_check(const TrickSet& set, const DataDistribution& dist, double r,
                                  std::int64_t trials, const SeedSpec& seed, unsigned workers) {
  if (trials < 2) throw std::invalid_argument("invariance check needs at least 2 trials");
  check_radius(r);
  validate(set);
  if (dim(set) != dim(dist)) {
    throw std::invalid_argument("set dimension does not match distribution dimension");
  }
  const AdversaryStrategy strategy{SignFlip{set}};
  validate(strategy);

  InvarianceReport report;
  report.success_probability =
      success_probability(strategy, dist, r, trials, seed.substream(kSubSuccessGate), workers);
  if (report.success_probability < 0.999) {
    std::ostringstream os;
    os << "sign-flip success probability " << report.success_probability
       << " is below 0.999 at r=" << r << "; the invariance comparison would be conditioned";
    throw std::invalid_argument(os.str());
  }

  const auto* bounded = std::get_if<IIDSymmetricBounded>(&dist);
  const bool discrete = bounded != nullptr && bounded->kind == BoundedKind::rademacher;
  const int n = dim(dist);
  if (discrete && n > 10) {
    throw std::invalid_argument(
        "exact pushforward enumeration supports dimension <= 10 for sign data");
  }

  if (discrete) {
    // Exhaustive route: push every sign pattern through the attack and
    // compare the resulting mass function with the uniform law.
    report.exact = true;
    const auto patterns = static_cast<std::uint64_t>(1) << n;
    const double mass = 1.0 / static_cast<double>(patterns);
    std::map<Vector, double> pushforward;
    double give_up_mass = 0.0;
    Vector x(static_cast<std::size_t>(n));
    for (std::uint64_t p = 0; p < patterns; ++p) {
      for (int i = 0; i < n; ++i) {
        x[static_cast<std::size_t>(i)] = ((p >> i) & 1u) != 0 ? 1.0 : -1.0;
      }
      AdversaryOutcome out = attack(strategy, x, r);
      if (out.has_value()) {
        pushforward[out->fake] += mass;
      } else {
        give_up_mass += mass;
      }
    }
    double worst = give_up_mass;
    for (std::uint64_t p = 0; p < patterns; ++p) {
      for (int i = 0; i < n; ++i) {
        x[static_cast<std::size_t>(i)] = ((p >> i) & 1u) != 0 ? 1.0 : -1.0;
      }
      const auto it = pushforward.find(x);
      const double got = it == pushforward.end() ? 0.0 : it->second;
      worst = std::max(worst, std::fabs(got - mass));
    }
    report.max_pmf_discrepancy = worst;
    return report;
  }

  // Sampled route: disjoint streams feed the two arms, fakes keep only the
  // successful attacks (the gate above keeps the loss below 0.1%).
  const std::size_t count = static_cast<std::size_t>(trials);
  constexpr int kProjections = 5;
  std::vector<Vector> directions;
  directions.reserve(kProjections);
  {
    std::mt19937_64 eng = engine_for(seed.substream(kSubProjections), 0);
    for (int k = 0; k < kProjections; ++k) {
      Vector g(static_cast<std::size_t>(n));
      fill_standard_normal(eng, g.data(), g.size());
      const double len = norm2(g);
      for (auto& e : g) e /= len;
      directions.push_back(std::move(g));
    }
  }

  const int stats_count = 1 + kProjections;
  std::vector<std::vector<double>> real_stats(static_cast<std::size_t>(stats_count));
  std::vector<std::vector<double>> fake_stats(static_cast<std::size_t>(stats_count));
  for (auto& v : real_stats) v.resize(count);
  std::vector<std::vector<double>> fake_raw(static_cast<std::size_t>(stats_count));
  for (auto& v : fake_raw) v.resize(count);
  std::vector<char> success(count, 0);

  const SeedSpec real_seed = seed.substream(kSubInvarianceReal);
  const SeedSpec fake_seed = seed.substream(kSubInvarianceFake);
  for_each_block(trials, workers, [&](std::int64_t, std::int64_t lo, std::int64_t hi) {
    Vector x;
    for (std::int64_t t = lo; t < hi; ++t) {
      const auto i = static_cast<std::size_t>(t);
      sample_into(dist, real_seed, static_cast<std::uint64_t>(t), x);
      real_stats[0][i] = norm2(x);
      for (int k = 0; k < kProjections; ++k) {
        real_stats[static_cast<std::size_t>(1 + k)][i] = dot(x, directions[static_cast<std::size_t>(k)]);
      }
      sample_into(dist, fake_seed, static_cast<std::uint64_t>(t), x);
      AdversaryOutcome out = attack(strategy, x, r);
      if (!out.has_value()) continue;
      success[i] = 1;
      fake_raw[0][i] = norm2(out->fake);
      for (int k = 0; k < kProjections; ++k) {
        fake_raw[static_cast<std::size_t>(1 + k)][i] =
            dot(out->fake, directions[static_cast<std::size_t>(k)]);
      }
    }
  });
  for (int s = 0; s < stats_count; ++s) {
    auto& dst = fake_stats[static_cast<std::size_t>(s)];
    dst.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      if (success[i] != 0) dst.push_back(fake_raw[static_cast<std::size_t>(s)][i]);
    }
  }

  report.labels.emplace_back("norm");
  for (int k = 0; k < kProjections; ++k) {
    report.labels.push_back("projection_" + std::to_string(k + 1));
  }
  for (int s = 0; s < stats_count; ++s) {
    report.ks.push_back(two_sample_ks(real_stats[static_cast<std::size_t>(s)],
                                      fake_stats[static_cast<std::size_t>(s)]));
  }
  return report;
}

}  // namespace fakewidth
