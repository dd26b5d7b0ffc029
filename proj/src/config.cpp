#include "cga/config.hpp"

#include <fstream>
#include <set>
#include <string>
#include <type_traits>

#include "cga/error.hpp"

namespace cga {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorKind::InvalidRequest, "config: " + what); }

// Strict object reader: every key must be consumed, types must match.
class Reader {
 public:
  Reader(const json& obj, std::string where) : obj_(obj), where_(std::move(where)) {
    if (!obj_.is_object()) fail(where_ + " must be an object");
  }

  template <class T>
  void get(const char* key, T& out) {
    seen_.insert(key);
    const auto it = obj_.find(key);
    if (it == obj_.end()) return;
    const std::string path = where_ + "." + key;
    if constexpr (std::is_same_v<T, bool>) {
      if (!it->is_boolean()) fail(path + " must be a boolean");
      out = it->get<bool>();
    } else if constexpr (std::is_unsigned_v<T>) {
      if (!it->is_number_unsigned()) fail(path + " must be a non-negative integer");
      out = it->get<T>();
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!it->is_number()) fail(path + " must be a number");
      out = it->get<T>();
    } else {
      if (!it->is_string()) fail(path + " must be a string");
      out = it->get<T>();
    }
  }

  const json* child(const char* key) {
    seen_.insert(key);
    const auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  void finish() const {
    for (const auto& item : obj_.items()) {
      if (!seen_.count(item.key())) fail("unknown key " + where_ + "." + item.key());
    }
  }

 private:
  const json& obj_;
  std::string where_;
  std::set<std::string> seen_;
};

std::string_view to_string(SelectionWeighting s) { return s == SelectionWeighting::Rank ? "rank" : "fitness"; }
std::string_view to_string(PopulationScaling s) {
  return s == PopulationScaling::UnitInterval ? "unit_interval" : "min_max";
}
std::string_view to_string(RandomDistribution d) { return d == RandomDistribution::Normal ? "normal" : "uniform"; }

template <class Enum>
Enum parse_enum(const std::string& value, std::initializer_list<std::pair<const char*, Enum>> options,
                const std::string& path) {
  std::string valid;
  for (const auto& [name, e] : options) {
    if (value == name) return e;
    valid += valid.empty() ? name : std::string(", ") + name;
  }
  fail(path + " must be one of: " + valid);
}

void read_ga(const json& j, GaConfig& ga) {
  Reader r(j, "ga");
  r.get("population_size", ga.population_size);
  r.get("p_crossover", ga.p_crossover);
  r.get("p_mutation", ga.p_mutation);
  r.get("generations", ga.generations);
  r.get("success_alpha", ga.success_alpha);
  r.get("elitism", ga.elitism);
  r.get("blend_extension", ga.blend_extension);
  std::string selection{to_string(ga.selection)};
  std::string scaling{to_string(ga.scaling)};
  r.get("selection", selection);
  r.get("scaling", scaling);
  ga.selection = parse_enum<SelectionWeighting>(
      selection, {{"rank", SelectionWeighting::Rank}, {"fitness", SelectionWeighting::Fitness}}, "ga.selection");
  ga.scaling = parse_enum<PopulationScaling>(
      scaling, {{"unit_interval", PopulationScaling::UnitInterval}, {"min_max", PopulationScaling::MinMax}},
      "ga.scaling");
  r.finish();
}

void read_entropy(const json& j, EntropyConfig& e) {
  Reader r(j, "entropy");
  r.get("bins_per_axis", e.bins_per_axis);
  r.get("k_constant", e.k_constant);
  std::string base = e.log_base == LogBase::Two ? "2" : "e";
  r.get("log_base", base);
  e.log_base = parse_enum<LogBase>(base, {{"2", LogBase::Two}, {"e", LogBase::E}}, "entropy.log_base");
  r.finish();
}

void read_map_params(const json& j, MapParams& p) {
  Reader r(j, "map_params");
  r.get("burn_in", p.burn_in);
  if (const json* c = r.child("lorenz")) {
    Reader s(*c, "map_params.lorenz");
    s.get("sigma", p.lorenz.sigma);
    s.get("rho", p.lorenz.rho);
    s.get("beta", p.lorenz.beta);
    s.get("dt", p.lorenz.dt);
    s.finish();
  }
  if (const json* c = r.child("rossler")) {
    Reader s(*c, "map_params.rossler");
    s.get("a", p.rossler.a);
    s.get("b", p.rossler.b);
    s.get("c", p.rossler.c);
    s.get("dt", p.rossler.dt);
    s.finish();
  }
  if (const json* c = r.child("random")) {
    Reader s(*c, "map_params.random");
    s.get("a", p.random.a);
    s.get("b", p.random.b);
    std::string dist{to_string(p.random.distribution)};
    s.get("distribution", dist);
    p.random.distribution = parse_enum<RandomDistribution>(
        dist, {{"normal", RandomDistribution::Normal}, {"uniform", RandomDistribution::Uniform}},
        "map_params.random.distribution");
    s.finish();
  }
  if (const json* c = r.child("phaseran")) {
    Reader s(*c, "map_params.phaseran");
    s.get("alpha", p.phaseran.alpha);
    s.finish();
  }
  if (const json* c = r.child("mackeyglass")) {
    Reader s(*c, "map_params.mackeyglass");
    s.get("a", p.mackey_glass.a);
    s.get("b", p.mackey_glass.b);
    s.get("n", p.mackey_glass.n);
    s.get("tau", p.mackey_glass.tau);
    s.get("dt", p.mackey_glass.dt);
    s.get("steps_per_sample", p.mackey_glass.steps_per_sample);
    s.finish();
  }
  if (const json* c = r.child("ikeda")) {
    Reader s(*c, "map_params.ikeda");
    s.get("u", p.ikeda.u);
    s.finish();
  }
  if (const json* c = r.child("henon")) {
    Reader s(*c, "map_params.henon");
    s.get("a", p.henon.a);
    s.get("b", p.henon.b);
    s.finish();
  }
  if (const json* c = r.child("quadratic")) {
    Reader s(*c, "map_params.quadratic");
    s.get("a", p.quadratic.a);
    s.finish();
  }
  if (const json* c = r.child("logistic")) {
    Reader s(*c, "map_params.logistic");
    s.get("a", p.logistic.a);
    s.finish();
  }
  r.finish();
}

}  // namespace

json map_params_to_json(const MapParams& p) {
  return {
      {"burn_in", p.burn_in},
      {"lorenz", {{"sigma", p.lorenz.sigma}, {"rho", p.lorenz.rho}, {"beta", p.lorenz.beta}, {"dt", p.lorenz.dt}}},
      {"rossler", {{"a", p.rossler.a}, {"b", p.rossler.b}, {"c", p.rossler.c}, {"dt", p.rossler.dt}}},
      {"random", {{"a", p.random.a}, {"b", p.random.b}, {"distribution", to_string(p.random.distribution)}}},
      {"phaseran", {{"alpha", p.phaseran.alpha}}},
      {"mackeyglass",
       {{"a", p.mackey_glass.a},
        {"b", p.mackey_glass.b},
        {"n", p.mackey_glass.n},
        {"tau", p.mackey_glass.tau},
        {"dt", p.mackey_glass.dt},
        {"steps_per_sample", p.mackey_glass.steps_per_sample}}},
      {"ikeda", {{"u", p.ikeda.u}}},
      {"henon", {{"a", p.henon.a}, {"b", p.henon.b}}},
      {"quadratic", {{"a", p.quadratic.a}}},
      {"logistic", {{"a", p.logistic.a}}},
  };
}

json config_to_json(const ExperimentConfig& cfg) {
  json functions = json::array();
  for (FunctionId f : cfg.functions) functions.push_back(to_string(f));
  json maps = json::array();
  for (MapId m : cfg.maps) maps.push_back(to_string(m));
  const GaConfig& ga = cfg.ga;
  return {
      {"functions", functions},
      {"maps", maps},
      {"trials_per_pair", cfg.trials_per_pair},
      {"master_seed", cfg.master_seed},
      {"initial_jitter", cfg.initial_jitter},
      {"max_retries", cfg.max_retries},
      {"contour_bins", cfg.contour_bins},
      {"output_dir", cfg.output_dir.string()},
      {"threads", cfg.threads},
      {"ga",
       {{"population_size", ga.population_size},
        {"p_crossover", ga.p_crossover},
        {"p_mutation", ga.p_mutation},
        {"generations", ga.generations},
        {"success_alpha", ga.success_alpha},
        {"elitism", ga.elitism},
        {"blend_extension", ga.blend_extension},
        {"selection", to_string(ga.selection)},
        {"scaling", to_string(ga.scaling)}}},
      {"entropy",
       {{"bins_per_axis", cfg.entropy.bins_per_axis},
        {"k_constant", cfg.entropy.k_constant},
        {"log_base", cfg.entropy.log_base == LogBase::Two ? "2" : "e"}}},
      {"map_params", map_params_to_json(cfg.map_params)},
  };
}

ExperimentConfig config_from_json(const json& doc) {
  if (doc.is_object() && doc.contains("config") && doc.contains("pairs")) return config_from_json(doc.at("config"));

  ExperimentConfig cfg;
  Reader r(doc, "config");
  if (const json* f = r.child("functions")) {
    if (!f->is_array()) fail("functions must be an array of names");
    cfg.functions.clear();
    for (const json& name : *f) {
      if (!name.is_string()) fail("functions must be an array of names");
      const auto id = parse_function_id(name.get<std::string>());
      if (!id) fail("unknown function '" + name.get<std::string>() + "'");
      cfg.functions.push_back(*id);
    }
  }
  if (const json* m = r.child("maps")) {
    if (!m->is_array()) fail("maps must be an array of names");
    cfg.maps.clear();
    for (const json& name : *m) {
      if (!name.is_string()) fail("maps must be an array of names");
      const auto id = parse_map_id(name.get<std::string>());
      if (!id) fail("unknown map '" + name.get<std::string>() + "'");
      cfg.maps.push_back(*id);
    }
  }
  r.get("trials_per_pair", cfg.trials_per_pair);
  r.get("master_seed", cfg.master_seed);
  r.get("initial_jitter", cfg.initial_jitter);
  r.get("max_retries", cfg.max_retries);
  r.get("contour_bins", cfg.contour_bins);
  std::string out = cfg.output_dir.string();
  r.get("output_dir", out);
  cfg.output_dir = out;
  r.get("threads", cfg.threads);
  if (const json* g = r.child("ga")) read_ga(*g, cfg.ga);
  if (const json* e = r.child("entropy")) read_entropy(*e, cfg.entropy);
  if (const json* p = r.child("map_params")) read_map_params(*p, cfg.map_params);
  r.finish();
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open config " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(path.string() + ": " + e.what());
  }
  return config_from_json(doc);
}

}  // namespace cga
