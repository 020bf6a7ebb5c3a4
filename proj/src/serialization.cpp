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

#include "fakewidth/serialization.hpp"

#include <cmath>

namespace fakewidth {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) { throw config_error(message); }

const json& require(const json& j, const char* key, const char* where) {
  if (!j.is_object()) fail(std::string(where) + " must be a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) fail(std::string(where) + " is missing the \"" + key + "\" field");
  return *it;
}

int require_int(const json& j, const char* key, const char* where) {
  const json& v = require(j, key, where);
  if (!v.is_number_integer()) {
    fail(std::string(where) + ".\"" + key + "\" must be an integer");
  }
  return v.get<int>();
}

std::int64_t require_int64(const json& j, const char* key, const char* where) {
  const json& v = require(j, key, where);
  if (!v.is_number_integer()) {
    fail(std::string(where) + ".\"" + key + "\" must be an integer");
  }
  return v.get<std::int64_t>();
}

std::uint64_t optional_seed(const json& j, std::uint64_t fallback) {
  if (!j.is_object() || !j.contains("seed")) return fallback;
  const json& v = j.at("seed");
  if (!v.is_number_integer() && !v.is_number_unsigned()) fail("\"seed\" must be an integer");
  return v.get<std::uint64_t>();
}

double require_double(const json& j, const char* key, const char* where) {
  const json& v = require(j, key, where);
  if (!v.is_number()) fail(std::string(where) + ".\"" + key + "\" must be a number");
  return v.get<double>();
}

double optional_double(const json& j, const char* key, double fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number()) fail(std::string("\"") + key + "\" must be a number");
  return v.get<double>();
}

std::string require_string(const json& j, const char* key, const char* where) {
  const json& v = require(j, key, where);
  if (!v.is_string()) fail(std::string(where) + ".\"" + key + "\" must be a string");
  return v.get<std::string>();
}

Vector vector_from_json(const json& j, const char* where) {
  if (!j.is_array()) fail(std::string(where) + " must be an array of numbers");
  Vector out;
  out.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_number()) fail(std::string(where) + " must contain only numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

}  // namespace

json to_json(const TrickSet& set) {
  json j;
  if (const auto* nt = std::get_if<NormThreshold>(&set)) {
    j["kind"] = "norm_threshold";
    j["n"] = nt->n;
    j["min_norm"] = nt->min_norm;
  } else if (const auto* sn = std::get_if<SparseNorm>(&set)) {
    j["kind"] = "sparse_norm";
    j["n"] = sn->n;
    j["sparsity"] = sn->sparsity;
    j["min_norm"] = sn->min_norm;
  } else if (const auto* sf = std::get_if<SupportFamily>(&set)) {
    j["kind"] = "support_family";
    j["n"] = sf->n;
    json entries = json::array();
    for (const auto& e : sf->entries) {
      json entry;
      json support = json::array();
      for (int i : e.support) support.push_back(i + 1);  // 1-based on the wire
      entry["support"] = std::move(support);
      entry["min_norm"] = e.min_norm;
      entries.push_back(std::move(entry));
    }
    j["entries"] = std::move(entries);
  } else {
    j["kind"] = "half_coordinate";
    j["n"] = std::get<HalfCoordinate>(set).n;
  }
  return j;
}

TrickSet trick_set_from_json(const json& j) {
  const std::string kind = require_string(j, "kind", "trick set");
  if (kind == "norm_threshold") {
    NormThreshold s;
    s.n = require_int(j, "n", "norm_threshold");
    s.min_norm = optional_double(j, "min_norm", 1.0);
    return s;
  }
  if (kind == "sparse_norm") {
    SparseNorm s;
    s.n = require_int(j, "n", "sparse_norm");
    s.sparsity = j.contains("sparsity") ? require_int(j, "sparsity", "sparse_norm") : 1;
    s.min_norm = optional_double(j, "min_norm", 1.0);
    return s;
  }
  if (kind == "support_family") {
    SupportFamily s;
    s.n = require_int(j, "n", "support_family");
    const json& entries = require(j, "entries", "support_family");
    if (!entries.is_array() || entries.empty()) {
      fail("support_family.\"entries\" must be a non-empty array");
    }
    for (const auto& e : entries) {
      SupportFamilyEntry entry;
      const json& support = require(e, "support", "support_family entry");
      if (!support.is_array() || support.empty()) {
        fail("support_family entry needs a non-empty \"support\" array");
      }
      for (const auto& idx : support) {
        if (!idx.is_number_integer()) fail("support indices must be integers");
        const int one_based = idx.get<int>();
        if (one_based < 1) fail("support indices are 1-based and must be positive");
        entry.support.push_back(one_based - 1);
      }
      entry.min_norm = optional_double(e, "min_norm", 1.0);
      s.entries.push_back(std::move(entry));
    }
    return s;
  }
  if (kind == "half_coordinate") {
    HalfCoordinate s;
    s.n = require_int(j, "n", "half_coordinate");
    return s;
  }
  fail("unknown trick set kind \"" + kind + "\"");
}

json to_json(const DataDistribution& dist) {
  json j;
  if (const auto* g = std::get_if<StandardGaussian>(&dist)) {
    j["kind"] = "gaussian";
    j["n"] = g->n;
  } else {
    const auto& b = std::get<IIDSymmetricBounded>(dist);
    j["kind"] = b.kind == BoundedKind::rademacher ? "rademacher" : "uniform_symmetric";
    j["n"] = b.n;
  }
  return j;
}

DataDistribution distribution_from_json(const json& j) {
  const std::string kind = require_string(j, "kind", "distribution");
  const int n = require_int(j, "n", "distribution");
  if (kind == "gaussian") return StandardGaussian{n};
  if (kind == "rademacher") return IIDSymmetricBounded{n, BoundedKind::rademacher};
  if (kind == "uniform_symmetric") {
    return IIDSymmetricBounded{n, BoundedKind::uniform_symmetric};
  }
  fail("unknown distribution kind \"" + kind + "\"");
}

json to_json(const FocusSet& focus) {
  json points = json::array();
  for (const auto& p : focus.points) points.push_back(p);
  json j;
  j["points"] = std::move(points);
  return j;
}

FocusSet focus_set_from_json(const json& j) {
  const json& points = require(j, "points", "focus set");
  if (!points.is_array() || points.empty()) {
    fail("focus set \"points\" must be a non-empty array of vectors");
  }
  FocusSet out;
  out.points.reserve(points.size());
  for (const auto& p : points) out.points.push_back(vector_from_json(p, "focus set point"));
  return out;
}

json to_json(const Detector& detector) {
  json j;
  if (const auto* p = std::get_if<ProximityDetector>(&detector)) {
    j["kind"] = "proximity";
    j["set"] = to_json(p->set);
  } else {
    j["kind"] = "focused";
    j["focus"] = to_json(std::get<FocusedDetector>(detector).focus);
  }
  return j;
}

Detector detector_from_json(const json& j) {
  const std::string kind = require_string(j, "kind", "detector");
  if (kind == "proximity") {
    return ProximityDetector{trick_set_from_json(require(j, "set", "proximity detector"))};
  }
  if (kind == "focused") {
    return FocusedDetector{focus_set_from_json(require(j, "focus", "focused detector"))};
  }
  fail("unknown detector kind \"" + kind + "\"");
}

json to_json(const AdversaryStrategy& strategy) {
  json j;
  if (const auto* sf = std::get_if<SignFlip>(&strategy)) {
    j["kind"] = "sign_flip";
    j["set"] = to_json(sf->set);
  } else {
    const auto& ft = std::get<FixedTrick>(strategy);
    j["kind"] = "fixed_trick";
    j["set"] = to_json(ft.set);
    j["trick"] = ft.trick;
  }
  return j;
}

AdversaryStrategy adversary_from_json(const json& j) {
  const std::string kind = require_string(j, "kind", "adversary");
  if (kind == "sign_flip") {
    return SignFlip{trick_set_from_json(require(j, "set", "sign_flip adversary"))};
  }
  if (kind == "fixed_trick") {
    FixedTrick ft;
    ft.set = trick_set_from_json(require(j, "set", "fixed_trick adversary"));
    ft.trick = vector_from_json(require(j, "trick", "fixed_trick adversary"), "\"trick\"");
    return ft;
  }
  fail("unknown adversary kind \"" + kind + "\"");
}

std::vector<double> radii_from_json(const json& j) {
  std::vector<double> out;
  if (j.is_array()) {
    if (j.empty()) fail("radii array must be non-empty");
    for (const auto& e : j) {
      if (!e.is_number()) fail("radii array must contain only numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }
  if (!j.is_object()) fail("radii must be an array or a {min, max, count} object");
  const double lo = require_double(j, "min", "radii");
  const double hi = require_double(j, "max", "radii");
  const int count = require_int(j, "count", "radii");
  std::string scale = "geometric";
  if (j.contains("scale")) scale = require_string(j, "scale", "radii");
  if (count < 2) fail("radii.\"count\" must be at least 2");
  if (!(lo > 0.0) || !(hi > lo)) fail("radii need 0 < min < max");
  out.resize(static_cast<std::size_t>(count));
  if (scale == "geometric") {
    for (int i = 0; i < count; ++i) {
      out[static_cast<std::size_t>(i)] =
          lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1));
    }
  } else if (scale == "linear") {
    for (int i = 0; i < count; ++i) {
      out[static_cast<std::size_t>(i)] =
          lo + (hi - lo) * static_cast<double>(i) / (count - 1);
    }
  } else {
    fail("radii.\"scale\" must be \"geometric\" or \"linear\"");
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

SweepConfig sweep_config_from_json(const json& j) {
  SweepConfig config;
  config.set = trick_set_from_json(require(j, "set", "sweep config"));
  config.dist = distribution_from_json(require(j, "distribution", "sweep config"));
  config.detector = detector_from_json(require(j, "detector", "sweep config"));
  config.adversary = adversary_from_json(require(j, "adversary", "sweep config"));
  config.radii = radii_from_json(require(j, "radii", "sweep config"));
  config.trials = require_int64(j, "trials", "sweep config");
  config.master_seed = optional_seed(j, 0);
  config.u = optional_double(j, "u", 4.0);
  return config;
}

WidthJob width_job_from_json(const json& j) {
  WidthJob job;
  job.set = trick_set_from_json(require(j, "set", "width config"));
  job.dist = distribution_from_json(require(j, "distribution", "width config"));
  job.samples = require_int64(j, "samples", "width config");
  job.seed = optional_seed(j, 0);
  return job;
}

RadiusJob radius_job_from_json(const json& j) {
  RadiusJob job;
  job.set = trick_set_from_json(require(j, "set", "radius config"));
  job.dist = distribution_from_json(require(j, "distribution", "radius config"));
  job.trials = require_int64(j, "trials", "radius config");
  job.seed = optional_seed(j, 0);
  if (j.contains("grid")) job.options.grid = radii_from_json(j.at("grid"));
  job.options.level = optional_double(j, "level", 0.1);
  if (j.contains("bisection_steps")) {
    job.options.bisection_steps = require_int(j, "bisection_steps", "radius config");
  }
  if (j.contains("focus")) job.options.focus = focus_set_from_json(j.at("focus"));
  if (j.contains("adversary")) job.options.adversary = adversary_from_json(j.at("adversary"));
  return job;
}

InvarianceJob invariance_job_from_json(const json& j) {
  InvarianceJob job;
  job.set = trick_set_from_json(require(j, "set", "invariance config"));
  job.dist = distribution_from_json(require(j, "distribution", "invariance config"));
  job.r = require_double(j, "r", "invariance config");
  job.trials = require_int64(j, "trials", "invariance config");
  job.seed = optional_seed(j, 0);
  return job;
}

FocusedJob focused_job_from_json(const json& j) {
  FocusedJob job;
  job.set = trick_set_from_json(require(j, "set", "focused config"));
  job.dist = distribution_from_json(require(j, "distribution", "focused config"));
  job.samples = require_int64(j, "samples", "focused config");
  job.seed = optional_seed(j, 0);
  const json& candidates = require(j, "candidates", "focused config");
  if (!candidates.is_array() || candidates.empty()) {
    fail("focused config \"candidates\" must be a non-empty array of focus sets");
  }
  for (const auto& c : candidates) job.candidates.push_back(focus_set_from_json(c));
  return job;
}

std::string canonical_dump(const json& j) { return j.dump(); }

std::string config_hash_hex(const json& j) {
  const std::string text = canonical_dump(j);
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a 64-bit
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[h & 0xfull];
    h >>= 4;
  }
  return out;
}

}  // namespace fakewidth
