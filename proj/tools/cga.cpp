// cga: run chaotic-initialisation GA experiments from the command line.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cga/benchmarks.hpp"
#include "cga/chaos_maps.hpp"
#include "cga/config.hpp"
#include "cga/error.hpp"
#include "cga/harness.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kRuntimeFailure = 1;
constexpr int kUsageError = 2;

std::string map_names() {
  std::string out;
  for (cga::MapId m : cga::kAllMaps) out += (out.empty() ? "" : ", ") + std::string(cga::to_string(m));
  return out;
}

std::string function_names() {
  std::string out;
  for (cga::FunctionId f : cga::kAllFunctions) out += (out.empty() ? "" : ", ") + std::string(cga::to_string(f));
  return out;
}

cga::MapId require_map(const std::string& name) {
  auto id = cga::parse_map_id(name);
  if (!id) throw cga::Error(cga::ErrorKind::InvalidRequest, "unknown map '" + name + "'; valid: " + map_names());
  return *id;
}

cga::FunctionId require_function(const std::string& name) {
  auto id = cga::parse_function_id(name);
  if (!id) {
    throw cga::Error(cga::ErrorKind::InvalidRequest,
                     "unknown function '" + name + "'; valid: " + function_names());
  }
  return *id;
}

// Config file, then CGA_OUTPUT_DIR if the file left output_dir unset.
cga::ExperimentConfig base_config(const std::string& path) {
  nlohmann::json doc = nlohmann::json::object();
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw cga::Error(cga::ErrorKind::InvalidRequest, "cannot open config " + path);
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw cga::Error(cga::ErrorKind::InvalidRequest, path + ": " + e.what());
    }
  }
  cga::ExperimentConfig cfg = cga::config_from_json(doc);
  const nlohmann::json& flat = doc.contains("config") && doc.contains("pairs") ? doc["config"] : doc;
  if (!flat.contains("output_dir")) {
    if (const char* env = std::getenv("CGA_OUTPUT_DIR"); env && *env) cfg.output_dir = env;
  }
  return cfg;
}

struct RunOptions {
  std::string config_path;
  std::optional<std::size_t> threads;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> output_dir;
  std::vector<std::string> functions;
  std::vector<std::string> maps;
  bool quiet = false;
};

int cmd_run(const RunOptions& o) {
  cga::ExperimentConfig cfg = base_config(o.config_path);
  if (o.threads) cfg.threads = *o.threads;
  if (o.trials) cfg.trials_per_pair = *o.trials;
  if (o.seed) cfg.master_seed = *o.seed;
  if (o.output_dir) cfg.output_dir = *o.output_dir;
  if (!o.functions.empty()) {
    cfg.functions.clear();
    for (const auto& f : o.functions) cfg.functions.push_back(require_function(f));
  }
  if (!o.maps.empty()) {
    cfg.maps.clear();
    for (const auto& m : o.maps) cfg.maps.push_back(require_map(m));
  }
  cfg.validate();

  const cga::ExperimentReport report = cga::run_experiment(cfg);
  const auto files = cga::export_all(report, cfg.output_dir);
  if (!o.quiet) {
    std::printf("%-12s %10s %10s\n", "map", "overall_P", "mean_E");
    for (const auto& m : report.maps) {
      std::printf("%-12s %10.2f %10.5f\n", std::string(cga::to_string(m.map)).c_str(), m.overall_performance,
                  m.mean_entropy);
    }
    for (const auto& f : files) std::printf("wrote %s\n", f.string().c_str());
  }
  std::printf("spearman=%.6f\n", cga::correlation_entropy_performance(report));
  return kOk;
}

int cmd_single(const std::string& function, const std::string& map, std::uint64_t seed,
               const std::string& config_path) {
  const cga::FunctionId fn = require_function(function);
  const cga::MapId m = require_map(map);
  cga::ExperimentConfig cfg = base_config(config_path);
  cfg.master_seed = seed;
  cfg.validate();
  const cga::TrialRecord r = cga::run_trial(cfg, fn, m, 0);
  if (r.failed()) throw cga::Error(cga::ErrorKind::DegenerateOrbit, r.error);
  std::printf("function=%s\nmap=%s\nseed=%llu\n", std::string(cga::to_string(fn)).c_str(),
              std::string(cga::to_string(m)).c_str(), static_cast<unsigned long long>(seed));
  std::printf("initial_entropy=%.6f\n", r.initial_entropy);
  std::printf("best_point=%.10g,%.10g\n", r.best_point.x, r.best_point.y);
  std::printf("best_value=%.10g\n", r.best_value);
  std::printf("success=%s\n", r.success ? "true" : "false");
  return kOk;
}

int cmd_lyapunov(const std::string& map, std::size_t steps, double delta0) {
  const cga::MapId m = require_map(map);
  const cga::MapParams params;
  const double h = cga::estimate_lyapunov(m, params, steps, delta0);
  std::printf("%s %.6f\n", std::string(cga::to_string(m)).c_str(), h);
  return kOk;
}

int cmd_maps() {
  const cga::MapParams p;
  const nlohmann::json params = cga::map_params_to_json(p);
  for (cga::MapId m : cga::kAllMaps) {
    std::string key(cga::to_string(m));
    for (auto& c : key) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    std::printf("%-12s %s\n", std::string(cga::to_string(m)).c_str(), params.at(key).dump().c_str());
  }
  std::printf("burn_in=%zu\n", p.burn_in);
  return kOk;
}

int cmd_benchmarks() {
  std::printf("%-16s %-28s %-20s %s\n", "function", "box", "optimum", "f*");
  for (const auto& fn : cga::registry()) {
    char box[64], opt[64];
    std::snprintf(box, sizeof box, "[%g,%g]x[%g,%g]", fn.box.x_min, fn.box.x_max, fn.box.y_min, fn.box.y_max);
    std::snprintf(opt, sizeof opt, "(%g,%g)", fn.optima.front().x, fn.optima.front().y);
    std::printf("%-16s %-28s %-20s %g\n", std::string(fn.name).c_str(), box, opt, fn.optimum_value);
  }
  return kOk;
}

int cmd_series(const std::string& map, std::size_t length, std::optional<std::size_t> burn_in,
               std::uint64_t seed) {
  const cga::MapId m = require_map(map);
  const cga::MapParams params;
  const auto series = cga::generate_series(m, params, length, cga::default_initial_state(m),
                                           burn_in.value_or(params.burn_in), seed);
  cga::write_series(series, std::cout);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chaotic initial populations for a real-coded genetic algorithm"};
  app.require_subcommand(1);

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "Run the benchmark x generator trial matrix and export reports");
  run_cmd->add_option("config", run.config_path, "JSON config file (a report.json mirror also works)")
      ->check(CLI::ExistingFile);
  run_cmd->add_option("--threads", run.threads, "Worker threads (0 = hardware concurrency)");
  run_cmd->add_option("--trials", run.trials, "Trials per (function, map) pair");
  run_cmd->add_option("--seed", run.seed, "Master seed");
  run_cmd->add_option("--output-dir", run.output_dir, "Output directory");
  run_cmd->add_option("--functions", run.functions, "Benchmark subset")->delimiter(',');
  run_cmd->add_option("--maps", run.maps, "Generator subset")->delimiter(',');
  run_cmd->add_flag("--quiet", run.quiet, "Print only the correlation line");

  std::string single_fn, single_map, single_config;
  std::uint64_t single_seed = cga::ExperimentConfig{}.master_seed;
  auto* single_cmd = app.add_subcommand("single", "Run one GA trial and print its outcome");
  single_cmd->add_option("function", single_fn, "Benchmark function")->required();
  single_cmd->add_option("map", single_map, "Generator")->required();
  single_cmd->add_option("--seed", single_seed, "Seed");
  single_cmd->add_option("--config", single_config, "JSON config for GA and generator settings")
      ->check(CLI::ExistingFile);

  std::string lyap_map;
  std::size_t lyap_steps = 50000;
  double lyap_delta = 1e-8;
  auto* lyap_cmd = app.add_subcommand("lyapunov", "Estimate the largest Lyapunov exponent at default parameters");
  lyap_cmd->add_option("map", lyap_map, "Generator")->required();
  lyap_cmd->add_option("--steps", lyap_steps, "Renormalisation steps");
  lyap_cmd->add_option("--delta0", lyap_delta, "Initial separation");

  auto* maps_cmd = app.add_subcommand("maps", "List generators and their default parameters");
  auto* bench_cmd = app.add_subcommand("benchmarks", "List benchmark functions, boxes and optima");

  std::string series_map;
  std::size_t series_length = 100;
  std::optional<std::size_t> series_burn;
  std::uint64_t series_seed = 0;
  auto* series_cmd = app.add_subcommand("series", "Print a generator series, one sample per line");
  series_cmd->add_option("map", series_map, "Generator")->required();
  series_cmd->add_option("--length", series_length, "Samples");
  series_cmd->add_option("--burn-in", series_burn, "Discarded leading iterations");
  series_cmd->add_option("--seed", series_seed, "Seed for random and phaseran");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsageError;
  }

  try {
    if (*run_cmd) return cmd_run(run);
    if (*single_cmd) return cmd_single(single_fn, single_map, single_seed, single_config);
    if (*lyap_cmd) return cmd_lyapunov(lyap_map, lyap_steps, lyap_delta);
    if (*maps_cmd) return cmd_maps();
    if (*bench_cmd) return cmd_benchmarks();
    if (*series_cmd) return cmd_series(series_map, series_length, series_burn, series_seed);
  } catch (const cga::Error& e) {
    std::fprintf(stderr, "cga: %s\n", e.what());
    return e.kind() == cga::ErrorKind::InvalidRequest ? kUsageError : kRuntimeFailure;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "cga: %s\n", e.what());
    return kRuntimeFailure;
  }
  return kUsageError;
}
