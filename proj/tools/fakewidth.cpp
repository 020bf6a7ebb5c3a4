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

// fakewidth: batch driver for width estimation, detection sweeps, radius
// bracketing, sign-flip invariance checks and focused width bounds. Every
// run is reproducible from its config file and seed; volatile facts
// (timestamps, worker count) are confined to the .meta.json sidecar so the
// primary outputs are byte-identical across runs and worker counts.

#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fakewidth/experiments.hpp"
#include "fakewidth/io.hpp"
#include "fakewidth/parallel.hpp"
#include "fakewidth/serialization.hpp"

namespace {

using nlohmann::json;

constexpr int kExitConfig = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitBracketing = 4;
constexpr int kExitInternal = 1;

struct CommonArgs {
  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> workers;
};

int emit_error(int code, const std::string& kind, const std::string& message,
               const std::string& diagnostics = "") {
  json record;
  record["error"]["exit_code"] = code;
  record["error"]["kind"] = kind;
  record["error"]["message"] = message;
  if (!diagnostics.empty()) record["error"]["diagnostics"] = diagnostics;
  std::cerr << record.dump() << std::endl;
  return code;
}

unsigned workers_from_env() {
  const char* env = std::getenv("FAKEWIDTH_WORKERS");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const unsigned long v = std::strtoul(env, &end, 10);
  if (end == nullptr || *end != '\0') {
    throw std::invalid_argument("FAKEWIDTH_WORKERS must be a non-negative integer");
  }
  return static_cast<unsigned>(v);
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json load_config(const std::string& path) {
  std::ifstream stream(path);
  if (!stream) throw fakewidth::config_error("cannot read config file: " + path);
  try {
    return json::parse(stream);
  } catch (const json::parse_error& e) {
    throw fakewidth::config_error(std::string("config is not valid JSON: ") + e.what());
  }
}

// The effective config is the file content with the seed override applied,
// so the sidecar hash pins down exactly what ran.
json effective_config(json config, const std::optional<std::uint64_t>& seed) {
  if (seed.has_value()) config["seed"] = *seed;
  return config;
}

void write_outputs(const CommonArgs& args, const json& config, const std::string& main_output,
                   unsigned workers) {
  fakewidth::write_text_file(args.out_path, main_output);
  json meta;
  meta["config"] = config;
  meta["config_hash"] = fakewidth::config_hash_hex(config);
  meta["created_utc"] = utc_timestamp();
  meta["workers"] = workers;
  meta["tool"] = "fakewidth";
  fakewidth::write_text_file(args.out_path + ".meta.json", meta.dump(2) + "\n");
}

json width_estimate_json(const fakewidth::WidthEstimate& est) {
  json j;
  j["mean"] = est.mean;
  j["std_error"] = est.std_error;
  j["samples"] = est.samples;
  j["kind"] = est.kind == fakewidth::WidthKind::scaled_width ? "scaled_width" : "width";
  return j;
}

int run_width(const CommonArgs& args, unsigned workers) {
  const json config = effective_config(load_config(args.config_path), args.seed);
  const fakewidth::WidthJob job = fakewidth::width_job_from_json(config);
  const fakewidth::SeedSpec seed{job.seed, 0};
  const fakewidth::WidthEstimate est =
      fakewidth::estimate_scaled_width(job.set, job.dist, job.samples, seed, workers);
  json report;
  report["command"] = "width";
  report["estimate"] = width_estimate_json(est);
  const auto analytic = fakewidth::analytic_scaled_width(job.set);
  report["analytic"] = analytic.has_value() ? json(*analytic) : json(nullptr);
  report["set"] = fakewidth::to_json(job.set);
  report["distribution"] = fakewidth::to_json(job.dist);
  report["seed"] = job.seed;
  write_outputs(args, config, report.dump(2) + "\n", workers);
  return 0;
}

int run_sweep(const CommonArgs& args, unsigned workers) {
  const json config = effective_config(load_config(args.config_path), args.seed);
  fakewidth::SweepConfig sweep_config = fakewidth::sweep_config_from_json(config);
  fakewidth::SweepResult result = fakewidth::sweep(sweep_config, workers);
  result.config_hash = fakewidth::config_hash_hex(config);
  write_outputs(args, config, fakewidth::sweep_csv(result), workers);
  return 0;
}

int run_radius(const CommonArgs& args, unsigned workers) {
  const json config = effective_config(load_config(args.config_path), args.seed);
  const fakewidth::RadiusJob job = fakewidth::radius_job_from_json(config);
  const fakewidth::SeedSpec seed{job.seed, 0};
  const fakewidth::BracketResult result = fakewidth::bracket_detectability_radius(
      job.set, job.dist, job.trials, seed, job.options, workers);
  json report;
  report["command"] = "radius";
  report["r_lower"] = result.r_lower;
  report["r_upper"] = result.r_upper;
  report["level"] = result.level;
  report["trials"] = result.trials;
  report["grid"] = result.grid;
  report["scaled_width"] = width_estimate_json(result.scaled_width);
  report["battery"] = result.battery;
  report["set"] = fakewidth::to_json(job.set);
  report["distribution"] = fakewidth::to_json(job.dist);
  report["seed"] = job.seed;
  write_outputs(args, config, report.dump(2) + "\n", workers);
  return 0;
}

int run_invariance(const CommonArgs& args, unsigned workers) {
  const json config = effective_config(load_config(args.config_path), args.seed);
  const fakewidth::InvarianceJob job = fakewidth::invariance_job_from_json(config);
  const fakewidth::SeedSpec seed{job.seed, 0};
  const fakewidth::InvarianceReport result =
      fakewidth::invariance_check(job.set, job.dist, job.r, job.trials, seed, workers);
  json report;
  report["command"] = "invariance";
  report["success_probability"] = result.success_probability;
  report["exact"] = result.exact;
  if (result.exact) {
    report["max_pmf_discrepancy"] = result.max_pmf_discrepancy;
  } else {
    json stats = json::array();
    for (std::size_t i = 0; i < result.ks.size(); ++i) {
      json s;
      s["label"] = result.labels[i];
      s["ks_statistic"] = result.ks[i].statistic;
      s["p_value"] = result.ks[i].p_value;
      stats.push_back(std::move(s));
    }
    report["statistics"] = std::move(stats);
  }
  report["set"] = fakewidth::to_json(job.set);
  report["distribution"] = fakewidth::to_json(job.dist);
  report["r"] = job.r;
  report["seed"] = job.seed;
  write_outputs(args, config, report.dump(2) + "\n", workers);
  return 0;
}

int run_focused(const CommonArgs& args, unsigned workers) {
  const json config = effective_config(load_config(args.config_path), args.seed);
  const fakewidth::FocusedJob job = fakewidth::focused_job_from_json(config);
  const fakewidth::SeedSpec seed{job.seed, 0};
  const fakewidth::FocusedBound result = fakewidth::focused_width_upper_bound(
      job.set, job.candidates, job.dist, job.samples, seed, workers);
  json report;
  report["command"] = "focused";
  report["bound"] = width_estimate_json(result.estimate);
  report["chosen_index"] = result.chosen_index;
  json candidates = json::array();
  for (std::size_t i = 0; i < result.checks.size(); ++i) {
    json c;
    switch (result.checks[i].status) {
      case fakewidth::PolarStatus::satisfied:
        c["status"] = "satisfied";
        break;
      case fakewidth::PolarStatus::violated:
        c["status"] = "violated";
        break;
      default:
        c["status"] = "undecidable";
        break;
    }
    if (!result.checks[i].detail.empty()) c["detail"] = result.checks[i].detail;
    if (result.widths[i].has_value()) {
      c["width"] = width_estimate_json(*result.widths[i]);
    } else {
      c["width"] = nullptr;
    }
    candidates.push_back(std::move(c));
  }
  report["candidates"] = std::move(candidates);
  report["set"] = fakewidth::to_json(job.set);
  report["distribution"] = fakewidth::to_json(job.dist);
  report["seed"] = job.seed;
  write_outputs(args, config, report.dump(2) + "\n", workers);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fake-detection experiments: widths, sweeps, radius brackets"};
  app.require_subcommand(1);

  CommonArgs args;
  std::uint64_t seed_flag = 0;
  unsigned workers_flag = 0;
  // Presence of the overrides is checked after parsing via Option::count();
  // value callbacks would observe the bound variables before assignment.
  std::vector<CLI::Option*> seed_opts;
  std::vector<CLI::Option*> worker_opts;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", args.config_path, "JSON config file")->required();
    sub->add_option("--out", args.out_path, "output file path")->required();
    seed_opts.push_back(sub->add_option("--seed", seed_flag, "master seed override"));
    worker_opts.push_back(
        sub->add_option("--workers", workers_flag, "worker thread count (0 = all cores)"));
  };
  CLI::App* width = app.add_subcommand("width", "estimate the scaled width of a trick set");
  CLI::App* sweep = app.add_subcommand("sweep", "error-rate sweep over a radii grid (CSV)");
  CLI::App* radius = app.add_subcommand("radius", "bracket the detectability radius");
  CLI::App* invariance =
      app.add_subcommand("invariance", "check that sign flipping preserves the data law");
  CLI::App* focused = app.add_subcommand("focused", "focused width upper bound from candidates");
  for (CLI::App* sub : {width, sweep, radius, invariance, focused}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    // Keep stderr to exactly one machine-readable record.
    return emit_error(kExitConfig, "usage", e.what());
  }
  for (const CLI::Option* opt : seed_opts) {
    if (opt->count() > 0) args.seed = seed_flag;
  }
  for (const CLI::Option* opt : worker_opts) {
    if (opt->count() > 0) args.workers = workers_flag;
  }

  try {
    unsigned workers = args.workers.has_value() ? *args.workers : workers_from_env();
    workers = fakewidth::resolve_workers(workers);
    if (width->parsed()) return run_width(args, workers);
    if (sweep->parsed()) return run_sweep(args, workers);
    if (radius->parsed()) return run_radius(args, workers);
    if (invariance->parsed()) return run_invariance(args, workers);
    return run_focused(args, workers);
  } catch (const fakewidth::config_error& e) {
    return emit_error(kExitConfig, "config", e.what());
  } catch (const fakewidth::bracketing_error& e) {
    return emit_error(kExitBracketing, "bracketing", e.what(), e.diagnostics());
  } catch (const std::invalid_argument& e) {
    return emit_error(kExitPrecondition, "precondition", e.what());
  } catch (const std::runtime_error& e) {
    return emit_error(kExitPrecondition, "io", e.what());
  } catch (const std::exception& e) {
    return emit_error(kExitInternal, "internal", e.what());
  }
}
