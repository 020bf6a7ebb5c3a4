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

#include "fakewidth/adversary.hpp"

#include <cmath>
#include <stdexcept>

#include "fakewidth/parallel.hpp"

namespace fakewidth {

namespace {

const TrickSet& strategy_set(const AdversaryStrategy& strategy) {
  if (const auto* sf = std::get_if<SignFlip>(&strategy)) return sf->set;
  return std::get<FixedTrick>(strategy).set;
}

void check_radius(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw std::invalid_argument("attack radius must be positive and finite");
  }
}

}  // namespace

void validate(const AdversaryStrategy& strategy) {
  if (const auto* sf = std::get_if<SignFlip>(&strategy)) {
    validate(sf->set);
    if (!is_highly_symmetric(sf->set)) {
      throw std::invalid_argument(
          "sign flipping needs a trick set closed under coordinate sign changes");
    }
    return;
  }
  const auto& ft = std::get<FixedTrick>(strategy);
  validate(ft.set);
  if (static_cast<int>(ft.trick.size()) != dim(ft.set)) {
    throw std::invalid_argument("fixed trick dimension does not match its set");
  }
  if (!membership(ft.set, ft.trick, 1e-9)) {
    throw std::invalid_argument("fixed trick is not a member of its set");
  }
}

AdversaryOutcome attack(const AdversaryStrategy& strategy, const Vector& x, double r) {
  check_radius(r);
  if (const auto* sf = std::get_if<SignFlip>(&strategy)) {
    if (!is_highly_symmetric(sf->set)) {
      throw std::invalid_argument(
          "sign flipping needs a trick set closed under coordinate sign changes");
    }
    return sign_flip_candidate(sf->set, x, r);
  }
  const auto& ft = std::get<FixedTrick>(strategy);
  if (x.size() != ft.trick.size()) {
    throw std::invalid_argument("sample dimension does not match the fixed trick");
  }
  FakeSample out;
  out.trick = ft.trick;
  out.fake.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out.fake[i] = x[i] + r * ft.trick[i];
  return out;
}

double success_probability(const AdversaryStrategy& strategy, const DataDistribution& dist,
                           double r, std::int64_t trials, const SeedSpec& seed, unsigned workers) {
  if (trials < 1) throw std::invalid_argument("success_probability needs at least 1 trial");
  check_radius(r);
  validate(strategy);
  if (dim(strategy_set(strategy)) != dim(dist)) {
    throw std::invalid_argument("strategy dimension does not match distribution dimension");
  }
  if (std::holds_alternative<FixedTrick>(strategy)) return 1.0;

  std::vector<std::int64_t> hits(static_cast<std::size_t>(block_count(trials)), 0);
  for_each_block(trials, workers, [&](std::int64_t b, std::int64_t lo, std::int64_t hi) {
    Vector x;
    std::int64_t count = 0;
    for (std::int64_t t = lo; t < hi; ++t) {
      sample_into(dist, seed, static_cast<std::uint64_t>(t), x);
      if (attack(strategy, x, r).has_value()) ++count;
    }
    hits[static_cast<std::size_t>(b)] = count;
  });
  std::int64_t total = 0;
  for (std::int64_t h : hits) total += h;
  return static_cast<double>(total) / static_cast<double>(trials);
}

}  // namespace fakewidth
