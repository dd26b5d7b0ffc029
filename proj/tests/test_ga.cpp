#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "cga/error.hpp"
#include "cga/ga.hpp"

using namespace cga;

namespace {

// 0.99 quantiles of the chi-square distribution by degrees of freedom.
const std::map<std::size_t, double> kChi2Crit99 = {{1, 6.635}, {2, 9.210}, {3, 11.345}, {4, 13.277}, {5, 15.086}};

double chi_square(const std::vector<std::size_t>& observed, const std::vector<double>& expected_p, std::size_t n) {
  double s = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double e = expected_p[i] * double(n);
    s += (double(observed[i]) - e) * (double(observed[i]) - e) / e;
  }
  return s;
}

void check_roulette(const std::vector<double>& weights, std::uint64_t seed) {
  constexpr std::size_t draws = 10000;
  Rng rng(seed);
  std::vector<std::size_t> counts(weights.size(), 0);
  for (std::size_t i = 0; i < draws; ++i) ++counts[roulette_index(weights, rng)];
  double total = 0;
  for (double w : weights) total += w;
  std::vector<double> p;
  std::vector<std::size_t> obs;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double pi = total > 0 ? weights[i] / total : 1.0 / double(weights.size());
    if (pi == 0) {
      REQUIRE(counts[i] == 0);
      continue;
    }
    p.push_back(pi);
    obs.push_back(counts[i]);
  }
  const double stat = chi_square(obs, p, draws);
  INFO("chi2 = " << stat);
  CHECK(stat < kChi2Crit99.at(p.size() - 1));
}

// Kolmogorov-Smirnov distance from U[lo, hi].
double ks_uniform(std::vector<double> v, double lo, double hi) {
  std::sort(v.begin(), v.end());
  const double n = double(v.size());
  double d = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double f = (v[i] - lo) / (hi - lo);
    d = std::max({d, double(i + 1) / n - f, f - double(i) / n});
  }
  return d;
}

ChaoticSeries pair_series(const std::vector<double>& values) {
  ChaoticSeries s;
  s.generator = MapId::Random;
  s.width = 1;
  s.values = values;
  return s;
}

ChaoticSeries uniform_series(std::size_t pairs, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<double> v(2 * pairs);
  for (double& x : v) x = u(rng);
  return pair_series(v);
}

bool inside(const Chromosome& c, const SearchBox& b) { return b.contains(c.x, c.y); }

}  // namespace

TEST_CASE("defaults") {
  const GaConfig cfg;
  CHECK(cfg.population_size == 100);
  CHECK(cfg.p_crossover == 0.8);
  CHECK(cfg.p_mutation == 0.03);
  CHECK(cfg.generations == 50);
  CHECK(cfg.success_alpha == 0.001);
  CHECK_NOTHROW(cfg.validate());
  GaConfig bad;
  bad.p_mutation = 1.5;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = {};
  bad.population_size = 0;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = {};
  bad.success_alpha = 0;
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("population from series") {
  const SearchBox box{-5, 5, -5, 5};
  const auto s = pair_series({0.5, 0.5, 0.0, 0.0, 1.0, 1.0, 0.25, 0.75});
  for (auto mode : {PopulationScaling::MinMax, PopulationScaling::UnitInterval}) {
    const auto p = init_population(s, box, 4, mode);
    REQUIRE(p.size() == 4);
    CHECK(p[0] == Chromosome{0, 0});
    CHECK(p[1] == Chromosome{-5, -5});
    CHECK(p[2] == Chromosome{5, 5});
    CHECK(p[3] == Chromosome{-2.5, 2.5});
  }
  SECTION("min-max rescales the observed range") {
    const auto p = init_population(pair_series({2, 10, 4, 20, 3, 15}), box, 3, PopulationScaling::MinMax);
    CHECK(p[0] == Chromosome{-5, -5});
    CHECK(p[1] == Chromosome{5, 5});
    CHECK(p[2] == Chromosome{0, 0});
  }
  SECTION("unit interval saturates") {
    const auto p = init_population(pair_series({-3, 0.5, 7, 0.25}), box, 2, PopulationScaling::UnitInterval);
    CHECK(p[0] == Chromosome{-5, 0});
    CHECK(p[1] == Chromosome{5, -2.5});
  }
  SECTION("constant coordinate") {
    for (auto mode : {PopulationScaling::MinMax, PopulationScaling::UnitInterval}) {
      try {
        init_population(pair_series({0.3, 0.1, 0.3, 0.2}), box, 2, mode);
        FAIL("expected DegenerateSeries");
      } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DegenerateSeries);
      }
    }
  }
  SECTION("short series") { CHECK_THROWS_AS(init_population(pair_series({0.1, 0.2, 0.3}), box, 2), Error); }
}

TEST_CASE("fitness transform") {
  BenchmarkFunction linear = benchmark(FunctionId::Matyas);
  linear.objective = [](double x, double) { return x; };
  CHECK(fitness(linear, {0, 0}) == 1.0);
  CHECK(fitness(linear, {1, 0}) == 0.5);
  CHECK(fitness(linear, {0.5, 0}) > fitness(linear, {2, 0}));
  CHECK(fitness(benchmark(FunctionId::Beale), {3, 0.5}) == 1.0);
}

TEST_CASE("roulette proportionality") {
  check_roulette({1, 1, 1, 1}, 1);
  check_roulette({3, 1}, 2);
  check_roulette({0, 0}, 3);
  check_roulette({0.1, 0, 2.5, 0.7, 1.3, 0.4}, 4);
  Rng rng(5);
  std::uniform_real_distribution<double> u(0, 1);
  for (int k = 0; k < 5; ++k) {
    std::vector<double> w(5);
    for (double& x : w) x = u(rng);
    check_roulette(w, 100 + k);
  }
  const std::vector<double> negative{1, -1};
  CHECK_THROWS_AS(roulette_index(negative, rng), Error);
  const std::vector<double> empty;
  CHECK_THROWS_AS(roulette_index(empty, rng), Error);
  const Population pop{{1, 1}, {2, 2}};
  CHECK(roulette_select(pop, std::vector<double>{0, 1}, rng) == Chromosome{2, 2});
}

TEST_CASE("crossover") {
  const SearchBox box{-10, 10, -10, 10};
  const Chromosome a{-4, 6}, b{2, -1};
  Rng rng(9);
  for (int i = 0; i < 1000; ++i) {
    const auto [c1, c2] = crossover(a, b, 0.0, 0.5, box, rng);
    REQUIRE(c1 == a);
    REQUIRE(c2 == b);
  }
  const auto [m1, m2] = blend(a, b, 0.5, 0.5, box);
  CHECK(m1 == Chromosome{-1, 2.5});
  CHECK(m2 == Chromosome{-1, 2.5});
  for (int i = 0; i < 5000; ++i) {
    const auto [c1, c2] = crossover(a, b, 1.0, 0.0, box, rng);
    for (const auto& c : {c1, c2}) {
      REQUIRE(c.x >= -4);
      REQUIRE(c.x <= 2);
      REQUIRE(c.y >= -1);
      REQUIRE(c.y <= 6);
    }
  }
  const Chromosome edge1{-9.5, 9.9}, edge2{9.8, -9.9};
  for (int i = 0; i < 5000; ++i) {
    const auto [c1, c2] = crossover(edge1, edge2, 1.0, 0.5, box, rng);
    REQUIRE(inside(c1, box));
    REQUIRE(inside(c2, box));
  }
}

TEST_CASE("mutation") {
  const SearchBox box{-15, -5, -3, 3};
  const Chromosome c{-10, 1};
  Rng rng(12);
  for (int i = 0; i < 1000; ++i) REQUIRE(mutate(c, 0.0, box, rng) == c);
  std::vector<double> xs, ys;
  for (int i = 0; i < 10000; ++i) {
    const Chromosome m = mutate(c, 1.0, box, rng);
    REQUIRE(inside(m, box));
    xs.push_back(m.x);
    ys.push_back(m.y);
  }
  // KS critical value at the 0.01 level, large-sample form.
  const double crit = 1.628 / std::sqrt(10000.0);
  CHECK(ks_uniform(xs, -15, -5) < crit);
  CHECK(ks_uniform(ys, -3, 3) < crit);
}

TEST_CASE("generation step") {
  const auto& fn = benchmark(FunctionId::Matyas);
  GaConfig cfg;
  cfg.elitism = 1;
  Rng rng(77);
  auto pop = init_population(uniform_series(100, 1), fn.box, 100);
  pop[37] = {0, 0};
  SECTION("elitism keeps the optimum") {
    const auto next = evolve_generation(pop, fn, cfg, rng);
    REQUIRE(next.size() == 100);
    CHECK(next[0] == Chromosome{0, 0});
  }
  SECTION("no variation copies members") {
    cfg.p_crossover = 0;
    cfg.p_mutation = 0;
    const auto next = evolve_generation(pop, fn, cfg, rng);
    for (const auto& c : next) CHECK(std::find(pop.begin(), pop.end(), c) != pop.end());
  }
  SECTION("odd sizes") {
    cfg.population_size = 7;
    cfg.elitism = 2;
    pop.resize(7);
    CHECK(evolve_generation(pop, fn, cfg, rng).size() == 7);
  }
  SECTION("rank weighting") {
    cfg.selection = SelectionWeighting::Rank;
    CHECK(evolve_generation(pop, fn, cfg, rng).size() == 100);
  }
}

TEST_CASE("run invariants") {
  for (const auto& fn : registry()) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      INFO(fn.name << " seed " << seed);
      GaConfig cfg;
      cfg.rng_seed = seed;
      const auto series = uniform_series(100, seed * 31);
      double last_best = std::numeric_limits<double>::infinity();
      std::size_t observed = 0;
      const auto r = run_ga(fn, series, cfg, {}, [&](std::size_t g, const Population& p) {
        REQUIRE(g == observed++);
        REQUIRE(p.size() == cfg.population_size);
        double best = std::numeric_limits<double>::infinity();
        for (const auto& c : p) {
          REQUIRE(inside(c, fn.box));
          best = std::min(best, fn(c.x, c.y));
        }
        REQUIRE(best <= last_best);
        last_best = best;
      });
      CHECK(observed == cfg.generations + 1);
      CHECK(r.generations_run == 50);
      CHECK(r.best_value == last_best);
      CHECK(r.success == (std::abs(r.best_value - fn.optimum_value) < cfg.success_alpha));
      CHECK(r == run_ga(fn, series, cfg));
    }
  }
}

TEST_CASE("series holding the optimum always succeeds") {
  const auto& fn = benchmark(FunctionId::Matyas);
  auto series = uniform_series(100, 5);
  series.values[40] = 0.5;
  series.values[41] = 0.5;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    GaConfig cfg;
    cfg.rng_seed = seed;
    cfg.elitism = 1;
    const auto r = run_ga(fn, series, cfg);
    CHECK(r.success);
    CHECK(r.best_value == 0.0);
  }
}

TEST_CASE("initial entropy is measured on the initial population") {
  const auto& fn = benchmark(FunctionId::Ackley);
  const auto series = uniform_series(100, 8);
  const GaConfig cfg;
  const auto r = run_ga(fn, series, cfg);
  const auto pop = init_population(series, fn.box, cfg.population_size, cfg.scaling);
  CHECK(r.initial_entropy == population_entropy(pop, fn.box, EntropyConfig{}));
}
