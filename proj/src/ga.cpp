#include "cga/ga.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "cga/error.hpp"

namespace cga {

namespace {

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

double onto_axis(double u, double lo, double hi) { return std::clamp(lo + u * (hi - lo), lo, hi); }

struct Range {
  double lo;
  double hi;
};

}  // namespace

void GaConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::InvalidRequest, what); };
  if (population_size < 1) fail("population_size must be >= 1");
  if (generations < 1) fail("generations must be >= 1");
  if (!is_probability(p_crossover)) fail("p_crossover must lie in [0, 1]");
  if (!is_probability(p_mutation)) fail("p_mutation must lie in [0, 1]");
  if (!(success_alpha > 0.0)) fail("success_alpha must be positive");
  if (elitism > population_size) fail("elitism cannot exceed population_size");
  if (!(blend_extension >= 0.0) || !std::isfinite(blend_extension)) fail("blend_extension must be >= 0");
}

std::size_t available_pairs(const ChaoticSeries& series) noexcept { return series.values.size() / 2; }

Population init_population(const ChaoticSeries& series, const SearchBox& box, std::size_t size,
                           PopulationScaling scaling) {
  if (!box.valid()) throw Error(ErrorKind::InvalidRequest, "search box is empty");
  if (size < 1) throw Error(ErrorKind::InvalidRequest, "population size must be >= 1");
  if (available_pairs(series) < size) {
    throw Error(ErrorKind::InvalidRequest, "series offers " + std::to_string(available_pairs(series)) +
                                               " pairs, population needs " + std::to_string(size));
  }
  const auto& v = series.values;

  std::array<Range, 2> observed{Range{v[0], v[0]}, Range{v[1], v[1]}};
  for (std::size_t k = 0; k < size; ++k) {
    for (std::size_t axis = 0; axis < 2; ++axis) {
      const double s = v[2 * k + axis];
      if (!std::isfinite(s)) throw Error(ErrorKind::DegenerateSeries, "series holds a non-finite value");
      observed[axis].lo = std::min(observed[axis].lo, s);
      observed[axis].hi = std::max(observed[axis].hi, s);
    }
  }
  for (std::size_t axis = 0; axis < 2; ++axis) {
    if (!(observed[axis].hi > observed[axis].lo)) {
      throw Error(ErrorKind::DegenerateSeries, std::string("series coordinate ") + (axis == 0 ? "x" : "y") +
                                                   " is constant; no scaling onto the box exists");
    }
  }

  const std::array<Range, 2> reference = scaling == PopulationScaling::MinMax
                                             ? observed
                                             : std::array<Range, 2>{Range{0.0, 1.0}, Range{0.0, 1.0}};
  auto unit = [&](double s, std::size_t axis) {
    const double u = (s - reference[axis].lo) / (reference[axis].hi - reference[axis].lo);
    return std::clamp(u, 0.0, 1.0);
  };

  Population pop;
  pop.reserve(size);
  for (std::size_t k = 0; k < size; ++k) {
    pop.push_back({onto_axis(unit(v[2 * k], 0), box.x_min, box.x_max),
                   onto_axis(unit(v[2 * k + 1], 1), box.y_min, box.y_max)});
  }
  return pop;
}

double fitness(const BenchmarkFunction& fn, const Chromosome& c) {
  return 1.0 / (1.0 + evaluate(fn, c.x, c.y));
}

std::size_t roulette_index(std::span<const double> weights, Rng& rng) {
  if (weights.empty()) throw Error(ErrorKind::InvalidRequest, "roulette over an empty population");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw Error(ErrorKind::InvalidRequest, "roulette weights must be >= 0");
    total += w;
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double r = unit(rng);
  if (total <= 0.0) {
    return std::min(static_cast<std::size_t>(r * static_cast<double>(weights.size())), weights.size() - 1);
  }
  const double target = r * total;
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    cumulative += weights[i];
    last_positive = i;
    if (target < cumulative) return i;
  }
  return last_positive;
}

Chromosome roulette_select(std::span<const Chromosome> population, std::span<const double> weights, Rng& rng) {
  if (population.size() != weights.size()) {
    throw Error(ErrorKind::InvalidRequest, "population and weights differ in length");
  }
  return population[roulette_index(weights, rng)];
}

std::pair<Chromosome, Chromosome> blend(const Chromosome& a, const Chromosome& b, double lambda_x,
                                        double lambda_y, const SearchBox& box) {
  auto mix = [](double p, double q, double l) { return l * p + (1.0 - l) * q; };
  Chromosome c1{mix(a.x, b.x, lambda_x), mix(a.y, b.y, lambda_y)};
  Chromosome c2{mix(b.x, a.x, lambda_x), mix(b.y, a.y, lambda_y)};
  for (Chromosome* c : {&c1, &c2}) {
    c->x = std::clamp(c->x, box.x_min, box.x_max);
    c->y = std::clamp(c->y, box.y_min, box.y_max);
  }
  return {c1, c2};
}

std::pair<Chromosome, Chromosome> crossover(const Chromosome& a, const Chromosome& b, double p, double extension,
                                            const SearchBox& box, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  if (!(unit(rng) < p)) return {a, b};
  std::uniform_real_distribution<double> lambda(-extension, 1.0 + extension);
  const double lx = lambda(rng);
  const double ly = lambda(rng);
  return blend(a, b, lx, ly, box);
}

Chromosome mutate(const Chromosome& c, double p, const SearchBox& box, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Chromosome out = c;
  if (unit(rng) < p) out.x = std::uniform_real_distribution<double>(box.x_min, box.x_max)(rng);
  if (unit(rng) < p) out.y = std::uniform_real_distribution<double>(box.y_min, box.y_max)(rng);
  return out;
}

Population evolve_generation(const Population& population, const BenchmarkFunction& fn, const GaConfig& cfg,
                             Rng& rng) {
  const std::size_t n = population.size();
  if (n == 0) throw Error(ErrorKind::InvalidRequest, "cannot evolve an empty population");

  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = evaluate(fn, population[i].x, population[i].y);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  std::vector<double> weights(n);
  if (cfg.selection == SelectionWeighting::Rank) {
    for (std::size_t rank = 0; rank < n; ++rank) weights[order[rank]] = static_cast<double>(n - rank);
  } else {
    for (std::size_t i = 0; i < n; ++i) weights[i] = 1.0 / (1.0 + values[i]);
  }

  Population next;
  next.reserve(n);
  const std::size_t elites = std::min(cfg.elitism, n);
  for (std::size_t i = 0; i < elites; ++i) next.push_back(population[order[i]]);

  while (next.size() < n) {
    const Chromosome& a = population[roulette_index(weights, rng)];
    const Chromosome& b = population[roulette_index(weights, rng)];
    auto [c1, c2] = crossover(a, b, cfg.p_crossover, cfg.blend_extension, fn.box, rng);
    next.push_back(mutate(c1, cfg.p_mutation, fn.box, rng));
    if (next.size() < n) next.push_back(mutate(c2, cfg.p_mutation, fn.box, rng));
  }
  return next;
}

GaRunResult run_ga(const BenchmarkFunction& fn, const ChaoticSeries& series, const GaConfig& cfg,
                   const EntropyConfig& entropy, const GenerationObserver& observer) {
  cfg.validate();
  Population pop = init_population(series, fn.box, cfg.population_size, cfg.scaling);

  GaRunResult result;
  result.initial_entropy = population_entropy(pop, fn.box, entropy);

  auto track_best = [&](const Population& p, bool first) {
    for (const Chromosome& c : p) {
      const double v = evaluate(fn, c.x, c.y);
      if (first || v < result.best_value) {
        result.best_value = v;
        result.best_chromosome = c;
        first = false;
      }
    }
  };

  track_best(pop, true);
  if (observer) observer(0, pop);

  Rng rng(cfg.rng_seed);
  for (std::size_t g = 1; g <= cfg.generations; ++g) {
    pop = evolve_generation(pop, fn, cfg, rng);
    track_best(pop, false);
    if (observer) observer(g, pop);
    result.generations_run = g;
  }
  result.success = std::abs(result.best_value - fn.optimum_value) < cfg.success_alpha;
  return result;
}

}  // namespace cga
