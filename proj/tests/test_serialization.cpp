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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <vector>

#include "json.hpp"

#include "fakewidth/io.hpp"
#include "fakewidth/serialization.hpp"

using namespace fakewidth;
using nlohmann::json;

TEST_CASE("trick sets round-trip through json") {
  std::vector<TrickSet> sets;
  sets.push_back(TrickSet{NormThreshold{64, 2.5}});
  sets.push_back(TrickSet{SparseNorm{100, 5, 0.5}});
  sets.push_back(TrickSet{SupportFamily{
      6, {SupportFamilyEntry{{0, 2, 4}, 1.5}, SupportFamilyEntry{{1}, 2.0}}}});
  sets.push_back(TrickSet{HalfCoordinate{10}});
  for (const auto& set : sets) {
    const TrickSet back = trick_set_from_json(to_json(set));
    CHECK(to_json(back) == to_json(set));
    CHECK(dim(back) == dim(set));
  }
  // Supports are 1-based on the wire.
  const json family = to_json(sets[2]);
  CHECK(family["entries"][0]["support"] == json::array({1, 3, 5}));
}

TEST_CASE("trick set parsing accepts defaults and rejects junk") {
  CHECK(to_json(trick_set_from_json(json{{"kind", "norm_threshold"}, {"n", 8}})) ==
        to_json(TrickSet{NormThreshold{8, 1.0}}));
  CHECK(to_json(trick_set_from_json(json{{"kind", "sparse_norm"}, {"n", 8}})) ==
        to_json(TrickSet{SparseNorm{8, 1, 1.0}}));

  CHECK_THROWS_AS(trick_set_from_json(json{{"kind", "mystery"}, {"n", 3}}), config_error);
  CHECK_THROWS_AS(trick_set_from_json(json{{"n", 3}}), config_error);
  CHECK_THROWS_AS(trick_set_from_json(json{{"kind", "norm_threshold"}}), config_error);
  CHECK_THROWS_AS(trick_set_from_json(json{{"kind", "norm_threshold"}, {"n", "three"}}),
                  config_error);
  // 1-based support indices: 0 is out of range on the wire.
  CHECK_THROWS_AS(
      trick_set_from_json(json{{"kind", "support_family"},
                               {"n", 3},
                               {"entries", json::array({json{{"support", json::array({0, 1})}}})}}),
      config_error);
}

TEST_CASE("distributions round-trip through json") {
  for (const auto& dist :
       {DataDistribution{StandardGaussian{7}},
        DataDistribution{IIDSymmetricBounded{3, BoundedKind::rademacher}},
        DataDistribution{IIDSymmetricBounded{4, BoundedKind::uniform_symmetric}}}) {
    const DataDistribution back = distribution_from_json(to_json(dist));
    CHECK(to_json(back) == to_json(dist));
  }
  CHECK_THROWS_AS(distribution_from_json(json{{"kind", "cauchy"}, {"n", 3}}), config_error);
  CHECK_THROWS_AS(distribution_from_json(json{{"kind", "gaussian"}}), config_error);
}

TEST_CASE("focus sets, detectors and adversaries round-trip") {
  FocusSet focus;
  focus.points.push_back(Vector{2.0, 0.0});
  focus.points.push_back(Vector{-2.0, 0.0});
  const FocusSet focus_back = focus_set_from_json(to_json(focus));
  CHECK(focus_back.points == focus.points);
  CHECK_THROWS_AS(focus_set_from_json(json{{"points", "nope"}}), config_error);

  const TrickSet set{NormThreshold{2, 1.0}};
  const Detector prox{ProximityDetector{set}};
  const Detector foc{FocusedDetector{focus}};
  CHECK(to_json(detector_from_json(to_json(prox))) == to_json(prox));
  CHECK(to_json(detector_from_json(to_json(foc))) == to_json(foc));
  CHECK_THROWS_AS(detector_from_json(json{{"kind", "psychic"}}), config_error);

  const AdversaryStrategy flip{SignFlip{set}};
  const AdversaryStrategy fixed{FixedTrick{set, Vector{0.0, 1.5}}};
  CHECK(to_json(adversary_from_json(to_json(flip))) == to_json(flip));
  CHECK(to_json(adversary_from_json(to_json(fixed))) == to_json(fixed));
  CHECK_THROWS_AS(adversary_from_json(json{{"kind", "bribe"}}), config_error);
}

TEST_CASE("radii grids parse from arrays and ranges") {
  CHECK(radii_from_json(json::array({1.0, 2.0, 4.0})) == std::vector<double>{1.0, 2.0, 4.0});

  const std::vector<double> geo =
      radii_from_json(json{{"min", 1.0}, {"max", 16.0}, {"count", 5}, {"scale", "geometric"}});
  REQUIRE(geo.size() == 5);
  CHECK(geo.front() == 1.0);
  CHECK(geo.back() == 16.0);
  CHECK(geo[2] == doctest::Approx(4.0).epsilon(1e-12));

  const std::vector<double> lin =
      radii_from_json(json{{"min", 1.0}, {"max", 3.0}, {"count", 3}, {"scale", "linear"}});
  REQUIRE(lin.size() == 3);
  CHECK(lin[1] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(lin.back() == 3.0);

  CHECK_THROWS_AS(radii_from_json(json{{"min", 3.0}, {"max", 1.0}, {"count", 3}}), config_error);
  CHECK_THROWS_AS(radii_from_json(json{{"min", 0.0}, {"max", 1.0}, {"count", 3}}), config_error);
  CHECK_THROWS_AS(radii_from_json(json{{"min", 1.0}, {"max", 2.0}, {"count", 1}}), config_error);
  CHECK_THROWS_AS(radii_from_json(json{{"min", 1.0}, {"max", 2.0}, {"count", 3}, {"scale", "log"}}),
                  config_error);
  CHECK_THROWS_AS(radii_from_json(json("oops")), config_error);
}

TEST_CASE("sweep config parses round-trip essentials") {
  const json j{{"set", {{"kind", "norm_threshold"}, {"n", 16}}},
               {"distribution", {{"kind", "gaussian"}, {"n", 16}}},
               {"detector", {{"kind", "proximity"}, {"set", {{"kind", "norm_threshold"}, {"n", 16}}}}},
               {"adversary", {{"kind", "sign_flip"}, {"set", {{"kind", "norm_threshold"}, {"n", 16}}}}},
               {"radii", json::array({2.0, 4.0, 8.0})},
               {"trials", 500},
               {"seed", 7}};
  const SweepConfig cfg = sweep_config_from_json(j);
  CHECK(cfg.trials == 500);
  CHECK(cfg.master_seed == 7);
  CHECK(cfg.u == 4.0);
  CHECK(cfg.radii == std::vector<double>{2.0, 4.0, 8.0});
  CHECK_NOTHROW(validate(cfg));

  json missing = j;
  missing.erase("radii");
  CHECK_THROWS_AS(sweep_config_from_json(missing), config_error);
}

TEST_CASE("job configs parse") {
  const json set{{"kind", "norm_threshold"}, {"n", 4}};
  const json dist{{"kind", "gaussian"}, {"n", 4}};

  const WidthJob w = width_job_from_json(json{{"set", set}, {"distribution", dist},
                                              {"samples", 1000}, {"seed", 3}});
  CHECK(w.samples == 1000);
  CHECK(w.seed == 3);

  const RadiusJob r = radius_job_from_json(
      json{{"set", set}, {"distribution", dist}, {"trials", 400}, {"seed", 4},
           {"level", 0.2}, {"grid", json::array({1.0, 2.0})}});
  CHECK(r.trials == 400);
  CHECK(r.options.level == 0.2);
  CHECK(r.options.grid == std::vector<double>{1.0, 2.0});

  const InvarianceJob inv = invariance_job_from_json(
      json{{"set", set}, {"distribution", dist}, {"r", 1.5}, {"trials", 600}, {"seed", 5}});
  CHECK(inv.r == 1.5);

  const FocusedJob f = focused_job_from_json(
      json{{"set", set}, {"distribution", dist}, {"samples", 700}, {"seed", 6},
           {"candidates", json::array({json{{"points", json::array({json::array({1.0, 0.0, 0.0, 0.0}),
                                                                   json::array({-1.0, 0.0, 0.0, 0.0})})}}})}});
  CHECK(f.candidates.size() == 1);
  CHECK_THROWS_AS(focused_job_from_json(json{{"set", set}, {"distribution", dist},
                                             {"samples", 700}, {"seed", 6},
                                             {"candidates", json::array()}}),
                  config_error);
}

TEST_CASE("canonical dump and config hash are stable") {
  const json a{{"b", 1}, {"a", 2}};
  const json b{{"a", 2}, {"b", 1}};
  CHECK(canonical_dump(a) == canonical_dump(b));
  CHECK(config_hash_hex(a) == config_hash_hex(b));
  CHECK(config_hash_hex(a).size() == 16);
  CHECK(config_hash_hex(a) != config_hash_hex(json{{"a", 2}, {"b", 2}}));
}

TEST_CASE("csv output format is stable field for field") {
  SweepResult result;
  result.rows.push_back(SweepRow{1.5, ErrorRates{0.25, 0.0, 1.0, 0.001, 0.0, 0.0, 100}});
  result.rows.push_back(SweepRow{2.0, ErrorRates{0.1, 0.0, 0.5, 0.5e-3, 0.0, 0.0625, 100}});
  const std::string csv = sweep_csv(result);
  CHECK(csv ==
        "r,fpr,fnr,success_rate,fpr_se,fnr_se,success_se\n"
        "1.5,0.25,0,1,0.001,0,0\n"
        "2,0.1,0,0.5,5e-04,0,0.0625\n");
  // Shortest round-trip formatting keeps awkward doubles exact.
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");
  CHECK(format_double(15.937624443997257) == "15.937624443997256");
}
