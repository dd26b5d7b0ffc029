#include "cga/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>

#include "cga/config.hpp"
#include "cga/error.hpp"

namespace cga {

namespace {

std::mutex log_mutex;

std::uint64_t trial_seed(const ExperimentConfig& cfg, FunctionId fn, MapId map, std::size_t trial) {
  return derive_seed(cfg.master_seed,
                     {static_cast<std::uint64_t>(fn), static_cast<std::uint64_t>(map), trial});
}

bool retryable(ErrorKind k) {
  return k == ErrorKind::DegenerateOrbit || k == ErrorKind::DivergedOrbit || k == ErrorKind::DegenerateSeries;
}

std::string fmt(const char* spec, double v) {
  if (!std::isfinite(v)) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot open " + path.string() + " for writing");
  return out;
}

void close_out(std::ofstream& out, const std::filesystem::path& path) {
  out.close();
  if (!out) throw Error(ErrorKind::IoError, "write to " + path.string() + " failed");
}

double mean_entropy_of(std::span<const TrialRecord> records) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const TrialRecord& r : records) {
    if (r.failed()) continue;
    sum += r.initial_entropy;
    ++n;
  }
  return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

std::vector<double> average_ranks(std::span<const double> v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = r;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::InvalidRequest, what); };
  if (functions.empty()) fail("at least one function is required");
  if (maps.empty()) fail("at least one map is required");
  if (std::set<FunctionId>(functions.begin(), functions.end()).size() != functions.size()) {
    fail("function list contains duplicates");
  }
  if (std::set<MapId>(maps.begin(), maps.end()).size() != maps.size()) fail("map list contains duplicates");
  if (trials_per_pair < 1) fail("trials_per_pair must be >= 1");
  if (!(initial_jitter >= 0.0) || !std::isfinite(initial_jitter)) fail("initial_jitter must be >= 0");
  if (contour_bins < 1) fail("contour_bins must be >= 1");
  ga.validate();
  entropy.validate();
  map_params.validate();
}

const PairSummary& ExperimentReport::pair(FunctionId fn, MapId map) const {
  for (const PairSummary& p : pairs) {
    if (p.function == fn && p.map == map) return p;
  }
  throw Error(ErrorKind::InvalidRequest,
              "no summary for " + std::string(to_string(fn)) + "/" + std::string(to_string(map)));
}

const MapSummary& ExperimentReport::map_summary(MapId map) const {
  for (const MapSummary& m : maps) {
    if (m.map == map) return m;
  }
  throw Error(ErrorKind::InvalidRequest, "no summary for map " + std::string(to_string(map)));
}

std::vector<TrialRecord> ExperimentReport::trials_for(MapId map) const {
  std::vector<TrialRecord> out;
  for (const TrialRecord& t : trials) {
    if (t.map == map) out.push_back(t);
  }
  return out;
}

double compute_performance(std::span<const TrialRecord> records) {
  if (records.empty()) throw Error(ErrorKind::InvalidRequest, "performance of an empty record list");
  std::size_t successes = 0;
  for (const TrialRecord& r : records) {
    if (r.function != records[0].function || r.map != records[0].map) {
      throw Error(ErrorKind::InvalidRequest, "records mix functions or maps");
    }
    if (r.success) ++successes;
  }
  return 100.0 * static_cast<double>(successes) / static_cast<double>(records.size());
}

PairSummary summarize_pair(std::span<const TrialRecord> records) {
  PairSummary s;
  s.performance = compute_performance(records);
  s.function = records[0].function;
  s.map = records[0].map;
  s.trials = records.size();
  s.successes = static_cast<std::size_t>(std::count_if(records.begin(), records.end(),
                                                       [](const TrialRecord& r) { return r.success; }));
  s.mean_entropy = mean_entropy_of(records);
  return s;
}

double overall_performance(std::span<const double> per_function_performance) {
  if (per_function_performance.empty()) throw Error(ErrorKind::InvalidRequest, "no performances to average");
  return std::accumulate(per_function_performance.begin(), per_function_performance.end(), 0.0) /
         static_cast<double>(per_function_performance.size());
}

TrialRecord run_trial(const ExperimentConfig& cfg, FunctionId fn_id, MapId map, std::size_t trial_index) {
  const BenchmarkFunction& fn = benchmark(fn_id);
  TrialRecord rec;
  rec.function = fn_id;
  rec.map = map;
  rec.trial_index = trial_index;
  rec.rng_seed = trial_seed(cfg, fn_id, map, trial_index);

  const std::size_t width = sample_width(map);
  const std::size_t length = (2 * cfg.ga.population_size + width - 1) / width;
  const std::vector<double> base_state = default_initial_state(map);

  for (std::size_t attempt = 0; attempt <= cfg.max_retries; ++attempt) {
    const std::uint64_t attempt_seed = derive_seed(rec.rng_seed, {attempt});
    Rng jitter_rng(derive_seed(attempt_seed, {0}));
    std::uniform_real_distribution<double> jitter(-cfg.initial_jitter, cfg.initial_jitter);
    std::vector<double> state = base_state;
    if (cfg.initial_jitter > 0.0) {
      for (double& s : state) s += jitter(jitter_rng);
    }
    try {
      const ChaoticSeries series = generate_series(map, cfg.map_params, length, state, cfg.map_params.burn_in,
                                                   derive_seed(attempt_seed, {1}));
      GaConfig ga = cfg.ga;
      ga.rng_seed = derive_seed(attempt_seed, {2});
      const GaRunResult result = run_ga(fn, series, ga, cfg.entropy);
      rec.initial_entropy = result.initial_entropy;
      rec.best_value = result.best_value;
      rec.best_fitness = 1.0 / (1.0 + result.best_value);
      rec.best_point = result.best_chromosome;
      rec.success = result.success;
      rec.retries = attempt;
      rec.error.clear();
      return rec;
    } catch (const Error& e) {
      if (!retryable(e.kind())) throw;
      rec.error = e.what();
      std::lock_guard lock(log_mutex);
      std::cerr << "cga: " << to_string(fn_id) << "/" << to_string(map) << " trial " << trial_index << " attempt "
                << attempt << ": " << e.what() << "\n";
    }
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  rec.initial_entropy = nan;
  rec.best_value = nan;
  rec.best_fitness = nan;
  rec.best_point = {nan, nan};
  rec.success = false;
  rec.retries = cfg.max_retries;
  return rec;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  struct Task {
    FunctionId fn;
    MapId map;
    std::size_t trial;
  };
  std::vector<Task> tasks;
  tasks.reserve(cfg.functions.size() * cfg.maps.size() * cfg.trials_per_pair);
  for (FunctionId fn : cfg.functions) {
    for (MapId map : cfg.maps) {
      for (std::size_t t = 0; t < cfg.trials_per_pair; ++t) tasks.push_back({fn, map, t});
    }
  }

  std::vector<TrialRecord> results(tasks.size());
  std::size_t workers = cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.threads;
  workers = std::min(workers, tasks.size());

  std::atomic<std::size_t> next{0};
  std::atomic<bool> abort{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size() || abort.load()) return;
      try {
        results[i] = run_trial(cfg, tasks[i].fn, tasks[i].map, tasks[i].trial);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        abort = true;
        return;
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  ExperimentReport report;
  report.config = cfg;
  report.trials = std::move(results);
  std::stable_sort(report.trials.begin(), report.trials.end(), [](const TrialRecord& a, const TrialRecord& b) {
    return std::tie(a.function, a.map, a.trial_index) < std::tie(b.function, b.map, b.trial_index);
  });

  // Pairs follow the configured order, not the enum order.
  for (FunctionId fn : cfg.functions) {
    for (MapId map : cfg.maps) {
      std::vector<TrialRecord> bucket;
      for (const TrialRecord& t : report.trials) {
        if (t.function == fn && t.map == map) bucket.push_back(t);
      }
      report.pairs.push_back(summarize_pair(bucket));
    }
  }
  for (MapId map : cfg.maps) {
    std::vector<double> perf;
    double entropy_sum = 0.0;
    for (const PairSummary& p : report.pairs) {
      if (p.map != map) continue;
      perf.push_back(p.performance);
      entropy_sum += p.mean_entropy;
    }
    report.maps.push_back({map, overall_performance(perf), entropy_sum / static_cast<double>(perf.size())});
  }
  return report;
}

double spearman_correlation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error(ErrorKind::InvalidRequest, "spearman inputs differ in length");
  if (a.size() < 2) return 0.0;
  const std::vector<double> ra = average_ranks(a);
  const std::vector<double> rb = average_ranks(b);
  const double n = static_cast<double>(a.size());
  const double mean = (n + 1.0) / 2.0;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    sab += (ra[i] - mean) * (rb[i] - mean);
    saa += (ra[i] - mean) * (ra[i] - mean);
    sbb += (rb[i] - mean) * (rb[i] - mean);
  }
  if (saa == 0.0 || sbb == 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

double correlation_entropy_performance(const ExperimentReport& report) {
  std::vector<double> entropy, performance;
  for (const MapSummary& m : report.maps) {
    entropy.push_back(m.mean_entropy);
    performance.push_back(m.overall_performance);
  }
  return spearman_correlation(entropy, performance);
}

void export_performance_table(const ExperimentReport& report, const std::filesystem::path& path) {
  std::vector<MapSummary> rows = report.maps;
  std::stable_sort(rows.begin(), rows.end(),
                   [](const MapSummary& a, const MapSummary& b) { return a.mean_entropy < b.mean_entropy; });
  std::ofstream out = open_out(path);
  out << "map,overall_performance";
  for (FunctionId fn : report.config.functions) out << ',' << to_string(fn) << "_P," << to_string(fn) << "_E";
  out << '\n';
  for (const MapSummary& m : rows) {
    out << to_string(m.map) << ',' << fmt("%.2f", m.overall_performance);
    for (FunctionId fn : report.config.functions) {
      const PairSummary& p = report.pair(fn, m.map);
      out << ',' << fmt("%.2f", p.performance) << ',' << fmt("%.5f", p.mean_entropy);
    }
    out << '\n';
  }
  close_out(out, path);
}

void export_density_data(std::span<const TrialRecord> records, const std::filesystem::path& path) {
  std::vector<const TrialRecord*> rows;
  for (const TrialRecord& r : records) rows.push_back(&r);
  std::stable_sort(rows.begin(), rows.end(), [](const TrialRecord* a, const TrialRecord* b) {
    return std::tie(a->map, a->function, a->trial_index) < std::tie(b->map, b->function, b->trial_index);
  });
  std::ofstream out = open_out(path);
  out << "map,function,trial,entropy,fitness,best_value\n";
  for (const TrialRecord* r : rows) {
    out << to_string(r->map) << ',' << to_string(r->function) << ',' << r->trial_index << ','
        << fmt("%.10g", r->initial_entropy) << ',' << fmt("%.10g", r->best_fitness) << ','
        << fmt("%.10g", r->best_value) << '\n';
  }
  close_out(out, path);
}

void export_contour_data(const ExperimentReport& report, const std::filesystem::path& path) {
  const std::size_t bins = report.config.contour_bins;
  const double top = max_entropy(report.config.entropy);
  const double width = top / static_cast<double>(bins);
  std::ofstream out = open_out(path);
  out << "map_order_index,map,entropy_bin,entropy_low,entropy_high,density,success_rate\n";
  for (std::size_t order = 0; order < kContourMapOrder.size(); ++order) {
    const MapId map = kContourMapOrder[order];
    if (std::find(report.config.maps.begin(), report.config.maps.end(), map) == report.config.maps.end()) continue;
    std::vector<std::size_t> count(bins, 0), hits(bins, 0);
    std::size_t total = 0;
    for (const TrialRecord& t : report.trials) {
      if (t.map != map || t.failed()) continue;
      const auto b = std::min(static_cast<std::size_t>(std::max(t.initial_entropy, 0.0) / width), bins - 1);
      ++count[b];
      if (t.success) ++hits[b];
      ++total;
    }
    for (std::size_t b = 0; b < bins; ++b) {
      const double density = total == 0 ? 0.0 : static_cast<double>(count[b]) / static_cast<double>(total);
      const double rate = count[b] == 0 ? 0.0 : static_cast<double>(hits[b]) / static_cast<double>(count[b]);
      out << order + 1 << ',' << to_string(map) << ',' << b << ',' << fmt("%.6f", width * static_cast<double>(b))
          << ',' << fmt("%.6f", width * static_cast<double>(b + 1)) << ',' << fmt("%.10g", density) << ','
          << fmt("%.10g", rate) << '\n';
    }
  }
  close_out(out, path);
}

nlohmann::json report_to_json(const ExperimentReport& report) {
  using nlohmann::json;
  auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };

  json benchmarks = json::array();
  for (FunctionId id : report.config.functions) {
    const BenchmarkFunction& fn = benchmark(id);
    json optima = json::array();
    for (const Chromosome& c : fn.optima) optima.push_back({c.x, c.y});
    benchmarks.push_back({{"name", to_string(id)},
                          {"box", {fn.box.x_min, fn.box.x_max, fn.box.y_min, fn.box.y_max}},
                          {"optima", optima},
                          {"optimum_value", fn.optimum_value}});
  }
  json pairs = json::array();
  for (const PairSummary& p : report.pairs) {
    pairs.push_back({{"function", to_string(p.function)},
                     {"map", to_string(p.map)},
                     {"trials", p.trials},
                     {"successes", p.successes},
                     {"performance", p.performance},
                     {"mean_entropy", p.mean_entropy}});
  }
  json maps = json::array();
  for (const MapSummary& m : report.maps) {
    maps.push_back({{"map", to_string(m.map)},
                    {"overall_performance", m.overall_performance},
                    {"mean_entropy", m.mean_entropy}});
  }
  json trials = json::array();
  for (const TrialRecord& t : report.trials) {
    json row = {{"function", to_string(t.function)},
                {"map", to_string(t.map)},
                {"trial", t.trial_index},
                {"initial_entropy", num(t.initial_entropy)},
                {"best_value", num(t.best_value)},
                {"best_fitness", num(t.best_fitness)},
                {"best_point", {num(t.best_point.x), num(t.best_point.y)}},
                {"success", t.success},
                {"rng_seed", t.rng_seed},
                {"retries", t.retries}};
    if (t.failed()) row["error"] = t.error;
    trials.push_back(std::move(row));
  }
  return {{"config", config_to_json(report.config)},
          {"benchmarks", benchmarks},
          {"pairs", pairs},
          {"maps", maps},
          {"spearman_entropy_performance", correlation_entropy_performance(report)},
          {"trials", trials}};
}

void export_report_json(const ExperimentReport& report, const std::filesystem::path& path) {
  const std::string text = report_to_json(report).dump(2);
  std::ofstream out = open_out(path);
  out << text << '\n';
  close_out(out, path);
}

std::vector<std::filesystem::path> export_all(const ExperimentReport& report, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::IoError, "cannot create " + dir.string() + ": " + ec.message());
  const std::vector<std::filesystem::path> files = {dir / "performance_table.csv", dir / "density.csv",
                                                    dir / "contour.csv", dir / "report.json"};
  export_performance_table(report, files[0]);
  export_density_data(report.trials, files[1]);
  export_contour_data(report, files[2]);
  export_report_json(report, files[3]);
  return files;
}

}  // namespace cga
