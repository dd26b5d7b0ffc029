#pragma once

// Trial matrix over (benchmark, generator) pairs and its exporters.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "cga/benchmarks.hpp"
#include "cga/chaos_maps.hpp"
#include "cga/entropy.hpp"
#include "cga/ga.hpp"

namespace cga {

/// Map order of the entropy contour figure, index 1 first.
inline constexpr std::array<MapId, 9> kContourMapOrder = {
    MapId::Random, MapId::Quadratic, MapId::Henon,       MapId::Logistic, MapId::Ikeda,
    MapId::Phaseran, MapId::Rossler, MapId::MackeyGlass, MapId::Lorenz,
};

struct ExperimentConfig {
  std::vector<FunctionId> functions{kAllFunctions.begin(), kAllFunctions.end()};
  std::vector<MapId> maps{kAllMaps.begin(), kAllMaps.end()};
  std::size_t trials_per_pair = 50;
  GaConfig ga;
  EntropyConfig entropy;
  MapParams map_params;
  std::uint64_t master_seed = 20190725;
  /// Half-width of the uniform componentwise jitter applied to the default
  /// initial state of every trial.
  double initial_jitter = 1e-3;
  std::size_t max_retries = 5;
  /// Entropy bins of the contour grid over [0, max_entropy].
  std::size_t contour_bins = 32;
  std::filesystem::path output_dir = "cga_output";
  /// Worker count; 0 picks the hardware concurrency.
  std::size_t threads = 0;

  void validate() const;
};

struct TrialRecord {
  FunctionId function = FunctionId::Ackley;
  MapId map = MapId::Logistic;
  std::size_t trial_index = 0;
  double initial_entropy = 0.0;
  double best_value = 0.0;
  double best_fitness = 0.0;
  Chromosome best_point;
  bool success = false;
  std::uint64_t rng_seed = 0;
  std::size_t retries = 0;
  /// Non-empty when the generator failed after every retry; such a trial
  /// counts as unsuccessful and is left out of entropy averages.
  std::string error;

  bool failed() const noexcept { return !error.empty(); }
  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

struct PairSummary {
  FunctionId function = FunctionId::Ackley;
  MapId map = MapId::Logistic;
  std::size_t trials = 0;
  std::size_t successes = 0;
  double performance = 0.0;
  double mean_entropy = 0.0;

  friend bool operator==(const PairSummary&, const PairSummary&) = default;
};

struct MapSummary {
  MapId map = MapId::Logistic;
  /// Unweighted mean of the per-function performances.
  double overall_performance = 0.0;
  /// Mean of the per-function mean entropies.
  double mean_entropy = 0.0;

  friend bool operator==(const MapSummary&, const MapSummary&) = default;
};

struct ExperimentReport {
  ExperimentConfig config;
  /// Sorted by (function, map, trial_index).
  std::vector<TrialRecord> trials;
  /// One entry per (function, map), function-major.
  std::vector<PairSummary> pairs;
  /// One entry per configured map, in configuration order.
  std::vector<MapSummary> maps;

  const PairSummary& pair(FunctionId fn, MapId map) const;
  const MapSummary& map_summary(MapId map) const;
  std::vector<TrialRecord> trials_for(MapId map) const;
};

/// 100 * successes / trials. Throws InvalidRequest for an empty or mixed list.
double compute_performance(std::span<const TrialRecord> records);

PairSummary summarize_pair(std::span<const TrialRecord> records);
double overall_performance(std::span<const double> per_function_performance);

/// Runs one trial: seeded jitter of the initial state, series generation with
/// bounded retries, then one GA run.
TrialRecord run_trial(const ExperimentConfig& cfg, FunctionId fn, MapId map, std::size_t trial_index);

ExperimentReport run_experiment(const ExperimentConfig& cfg);

/// Spearman rank correlation with average ranks for ties; 0 when either side
/// has no rank variance.
double spearman_correlation(std::span<const double> a, std::span<const double> b);

/// Spearman correlation between per-map mean entropy and overall performance.
double correlation_entropy_performance(const ExperimentReport& report);

/// Comma-separated, one row per map sorted by ascending mean entropy:
/// map, overall, then P and E per function.
void export_performance_table(const ExperimentReport& report, const std::filesystem::path& path);
/// One row per trial: map, function, trial, entropy, fitness, best_value.
void export_density_data(std::span<const TrialRecord> records, const std::filesystem::path& path);
/// Per-map histogram of initial entropies over contour_bins bins, normalised to 1.
void export_contour_data(const ExperimentReport& report, const std::filesystem::path& path);
/// Machine-readable mirror of the report, config included.
void export_report_json(const ExperimentReport& report, const std::filesystem::path& path);

/// Writes the four standard files into `dir` and returns their paths.
std::vector<std::filesystem::path> export_all(const ExperimentReport& report, const std::filesystem::path& dir);

}  // namespace cga
