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

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "json.hpp"

#ifndef FAKEWIDTH_CLI
#error "FAKEWIDTH_CLI must point at the command line binary"
#endif

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    std::ostringstream name;
    name << "fakewidth_cli_test_" << std::hex << rd() << rd();
    path = fs::temp_directory_path() / name.str();
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << text;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int run(const std::string& args, const fs::path& stderr_to) {
  const std::string cmd =
      std::string(FAKEWIDTH_CLI) + " " + args + " 2> \"" + stderr_to.string() + "\"";
  const int status = std::system(cmd.c_str());
  if (status == -1) return -1;
#ifdef _WIN32
  return status;
#else
  return WEXITSTATUS(status);
#endif
}

json error_record(const fs::path& stderr_file) {
  return json::parse(read_file(stderr_file))["error"];
}

json norm_set(int n) { return json{{"kind", "norm_threshold"}, {"n", n}}; }
json gaussian(int n) { return json{{"kind", "gaussian"}, {"n", n}}; }

}  // namespace

TEST_CASE("width subcommand writes a report and a metadata sidecar") {
  TempDir dir;
  const fs::path cfg = dir.path / "width.json";
  const fs::path out = dir.path / "width_report.json";
  const fs::path err = dir.path / "err.txt";
  write_file(cfg, json{{"set", norm_set(16)},
                       {"distribution", gaussian(16)},
                       {"samples", 4000},
                       {"seed", 21}}
                      .dump());
  REQUIRE(run("width --config \"" + cfg.string() + "\" --out \"" + out.string() + "\"", err) == 0);

  const json report = json::parse(read_file(out));
  CHECK(report["command"] == "width");
  CHECK(report["estimate"]["samples"] == 4000);
  const double mean = report["estimate"]["mean"].get<double>();
  const double se = report["estimate"]["std_error"].get<double>();
  const double analytic = report["analytic"].get<double>();
  CHECK(std::fabs(mean - analytic) <= 3.0 * se);

  const json meta = json::parse(read_file(fs::path(out.string() + ".meta.json")));
  CHECK(meta["tool"] == "fakewidth");
  CHECK(meta["config_hash"].is_string());
  CHECK(meta["workers"].is_number());
  CHECK(meta["config"]["seed"] == 21);
}

TEST_CASE("sweep output is byte-identical across worker counts and seed-sensitive") {
  TempDir dir;
  const fs::path cfg = dir.path / "sweep.json";
  const fs::path err = dir.path / "err.txt";
  write_file(cfg, json{{"set", norm_set(16)},
                       {"distribution", gaussian(16)},
                       {"detector", {{"kind", "proximity"}, {"set", norm_set(16)}}},
                       {"adversary", {{"kind", "sign_flip"}, {"set", norm_set(16)}}},
                       {"radii", json::array({2.0, 5.0, 8.0, 11.0})},
                       {"trials", 1000},
                       {"seed", 5}}
                      .dump());
  const fs::path out1 = dir.path / "w1.csv";
  const fs::path out4 = dir.path / "w4.csv";
  const fs::path out8 = dir.path / "w8.csv";
  const std::string base = "sweep --config \"" + cfg.string() + "\" --out \"";
  REQUIRE(run(base + out1.string() + "\" --workers 1", err) == 0);
  REQUIRE(run(base + out4.string() + "\" --workers 4", err) == 0);
  REQUIRE(run(base + out8.string() + "\" --workers 8", err) == 0);
  const std::string csv1 = read_file(out1);
  CHECK(csv1 == read_file(out4));
  CHECK(csv1 == read_file(out8));
  CHECK(csv1.rfind("r,fpr,fnr,success_rate,fpr_se,fnr_se,success_se\n", 0) == 0);

  // A different master seed must change the sampled rates.
  const fs::path out_seed = dir.path / "seeded.csv";
  REQUIRE(run(base + out_seed.string() + "\" --workers 4 --seed 99", err) == 0);
  CHECK(read_file(out_seed) != csv1);
  // The sidecar records the effective seed.
  const json meta = json::parse(read_file(fs::path(out_seed.string() + ".meta.json")));
  CHECK(meta["config"]["seed"] == 99);
}

TEST_CASE("config schema problems exit with code 2 and a machine-readable record") {
  TempDir dir;
  const fs::path err = dir.path / "err.txt";
  const fs::path out = dir.path / "out.json";

  const fs::path broken = dir.path / "broken.json";
  write_file(broken, "{ not json");
  CHECK(run("width --config \"" + broken.string() + "\" --out \"" + out.string() + "\"", err) == 2);
  json record = error_record(err);
  CHECK(record["exit_code"] == 2);
  CHECK(record["kind"] == "config");

  const fs::path unknown = dir.path / "unknown.json";
  write_file(unknown, json{{"set", {{"kind", "mystery"}, {"n", 4}}},
                           {"distribution", gaussian(4)},
                           {"samples", 100},
                           {"seed", 0}}
                          .dump());
  CHECK(run("width --config \"" + unknown.string() + "\" --out \"" + out.string() + "\"", err) == 2);
  CHECK(error_record(err)["kind"] == "config");

  // Usage errors (missing required flags) are config errors too.
  CHECK(run("width", err) == 2);
  CHECK(error_record(err)["kind"] == "usage");
  CHECK(run("conjure --config x --out y", err) == 2);
}

TEST_CASE("semantic precondition failures exit with code 3") {
  TempDir dir;
  const fs::path err = dir.path / "err.txt";
  const fs::path out = dir.path / "out.json";

  const fs::path mismatch = dir.path / "mismatch.json";
  write_file(mismatch, json{{"set", norm_set(4)},
                            {"distribution", gaussian(5)},
                            {"samples", 100},
                            {"seed", 0}}
                           .dump());
  CHECK(run("width --config \"" + mismatch.string() + "\" --out \"" + out.string() + "\"", err) == 3);
  json record = error_record(err);
  CHECK(record["exit_code"] == 3);
  CHECK(record["kind"] == "precondition");

  // Unreliable flip: the invariance comparison refuses to run.
  const fs::path refusal = dir.path / "refusal.json";
  write_file(refusal, json{{"set", norm_set(16)},
                           {"distribution", gaussian(16)},
                           {"r", 16.0},
                           {"trials", 2000},
                           {"seed", 0}}
                          .dump());
  CHECK(run("invariance --config \"" + refusal.string() + "\" --out \"" + out.string() + "\"", err) ==
        3);
  CHECK(error_record(err)["kind"] == "precondition");
}

TEST_CASE("bracketing failures exit with code 4 and carry diagnostics") {
  TempDir dir;
  const fs::path err = dir.path / "err.txt";
  const fs::path out = dir.path / "out.json";
  const fs::path cfg = dir.path / "radius.json";
  write_file(cfg, json{{"set", norm_set(16)},
                       {"distribution", gaussian(16)},
                       {"trials", 400},
                       {"seed", 0},
                       {"grid", json::array({0.1, 0.2})}}
                      .dump());
  CHECK(run("radius --config \"" + cfg.string() + "\" --out \"" + out.string() + "\"", err) == 4);
  const json record = error_record(err);
  CHECK(record["exit_code"] == 4);
  CHECK(record["kind"] == "bracketing");
  CHECK(record["diagnostics"].is_string());
  CHECK_FALSE(record["diagnostics"].get<std::string>().empty());
}

TEST_CASE("invariance subcommand reports the exact route on sign data") {
  TempDir dir;
  const fs::path err = dir.path / "err.txt";
  const fs::path out = dir.path / "inv.json";
  const fs::path cfg = dir.path / "inv_cfg.json";
  write_file(cfg, json{{"set", {{"kind", "sparse_norm"}, {"n", 8}, {"sparsity", 2}}},
                       {"distribution", {{"kind", "rademacher"}, {"n", 8}}},
                       {"r", 1.0},
                       {"trials", 500},
                       {"seed", 3}}
                      .dump());
  REQUIRE(run("invariance --config \"" + cfg.string() + "\" --out \"" + out.string() + "\"", err) ==
          0);
  const json report = json::parse(read_file(out));
  CHECK(report["command"] == "invariance");
  CHECK(report["exact"] == true);
  CHECK(report["max_pmf_discrepancy"] == 0.0);
  CHECK(report["success_probability"] == 1.0);
}
