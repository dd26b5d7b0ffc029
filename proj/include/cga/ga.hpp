#pragma once

// Real-coded genetic algorithm over two-gene chromosomes.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>

#include "cga/benchmarks.hpp"
#include "cga/chaos_maps.hpp"
#include "cga/entropy.hpp"
#include "cga/geometry.hpp"
#include "cga/random.hpp"

namespace cga {

/// How raw series values become genes.
enum class PopulationScaling {
  /// Values are read against the fixed reference interval [0, 1] and mapped
  /// onto the box axis; values outside the interval saturate at the box edge.
  UnitInterval,
  /// Per-axis affine map from the observed series min/max onto the box axis.
  MinMax,
};

/// Roulette-wheel slot sizes.
enum class SelectionWeighting {
  /// Slot proportional to fitness(), i.e. 1 / (1 + f).
  Fitness,
  /// Slot proportional to N - rank (best member rank 0).
  Rank,
};

struct GaConfig {
  std::size_t population_size = 100;
  double p_crossover = 0.8;
  double p_mutation = 0.03;
  std::size_t generations = 50;
  double success_alpha = 0.001;
  std::size_t elitism = 10;
  /// Blend interval extension: lambda ~ U[-e, 1 + e] per gene. 0 is the pure
  /// arithmetic (convex) blend.
  double blend_extension = 0.5;
  SelectionWeighting selection = SelectionWeighting::Fitness;
  PopulationScaling scaling = PopulationScaling::UnitInterval;
  std::uint64_t rng_seed = 0;

  void validate() const;
};

struct GaRunResult {
  Chromosome best_chromosome;
  double best_value = 0.0;
  double initial_entropy = 0.0;
  bool success = false;
  std::size_t generations_run = 0;

  friend bool operator==(const GaRunResult&, const GaRunResult&) = default;
};

/// Number of consecutive value pairs a series offers.
std::size_t available_pairs(const ChaoticSeries& series) noexcept;

/// Builds `size` chromosomes from the first `size` consecutive value pairs.
/// Throws DegenerateSeries when a coordinate is constant over those pairs and
/// InvalidRequest when the series is too short.
Population init_population(const ChaoticSeries& series, const SearchBox& box, std::size_t size,
                           PopulationScaling scaling = PopulationScaling::UnitInterval);

/// 1 / (1 + f(c)) for the non-negative benchmark objectives.
double fitness(const BenchmarkFunction& fn, const Chromosome& c);

/// Index drawn with probability weights[i] / sum(weights); uniform when all
/// weights are zero.
std::size_t roulette_index(std::span<const double> weights, Rng& rng);
Chromosome roulette_select(std::span<const Chromosome> population, std::span<const double> weights, Rng& rng);

/// Children (l*a + (1-l)*b, (1-l)*a + l*b) with an independent l per gene,
/// clamped to the box.
std::pair<Chromosome, Chromosome> blend(const Chromosome& a, const Chromosome& b, double lambda_x,
                                        double lambda_y, const SearchBox& box);

/// With probability p, blend with lambda ~ U[-extension, 1 + extension] per
/// gene; otherwise return the parents unchanged.
std::pair<Chromosome, Chromosome> crossover(const Chromosome& a, const Chromosome& b, double p, double extension,
                                            const SearchBox& box, Rng& rng);

/// Each gene independently reset, with probability p, to a uniform draw over
/// its box interval.
Chromosome mutate(const Chromosome& c, double p, const SearchBox& box, Rng& rng);

/// Elites copied unchanged, remainder filled by roulette-selected pairs passed
/// through crossover and mutation.
Population evolve_generation(const Population& population, const BenchmarkFunction& fn, const GaConfig& cfg,
                             Rng& rng);

using GenerationObserver = std::function<void(std::size_t generation, const Population& population)>;

/// Initialise from the series, measure the initial entropy, evolve exactly
/// cfg.generations generations and report the best member ever seen. The
/// observer, if set, sees generation 0 (initial) through cfg.generations.
GaRunResult run_ga(const BenchmarkFunction& fn, const ChaoticSeries& series, const GaConfig& cfg,
                   const EntropyConfig& entropy = {}, const GenerationObserver& observer = {});

}  // namespace cga
