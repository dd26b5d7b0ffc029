#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "cga/benchmarks.hpp"
#include "cga/chaos_maps.hpp"
#include "cga/config.hpp"
#include "cga/entropy.hpp"
#include "cga/error.hpp"
#include "cga/ga.hpp"
#include "cga/harness.hpp"

namespace py = pybind11;
using namespace cga;

namespace {

MapId map_arg(const std::string& name) {
  if (auto id = parse_map_id(name)) return *id;
  throw Error(ErrorKind::InvalidRequest, "unknown map '" + name + "'");
}

FunctionId function_arg(const std::string& name) {
  if (auto id = parse_function_id(name)) return *id;
  throw Error(ErrorKind::InvalidRequest, "unknown function '" + name + "'");
}

ExperimentConfig config_arg(const std::string& config_json) {
  return config_from_json(config_json.empty() ? nlohmann::json::object() : nlohmann::json::parse(config_json));
}

py::array_t<double> series_array(const ChaoticSeries& s) {
  py::array_t<double> out({s.length(), s.width});
  std::copy(s.values.begin(), s.values.end(), out.mutable_data());
  return out;
}

}  // namespace

PYBIND11_MODULE(_cga, m) {
  m.doc() = "Chaotic initial populations for a real-coded genetic algorithm";

  static py::exception<Error> cga_error(m, "CgaError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = cga_error;
      PyObject* value = PyObject_CallFunction(exc.ptr(), "s", e.what());
      PyObject_SetAttrString(value, "kind", py::str(std::string(to_string(e.kind()))).ptr());
      PyErr_SetObject(exc.ptr(), value);
      Py_DECREF(value);
    } catch (const nlohmann::json::exception& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def("map_names", [] {
    std::vector<std::string> out;
    for (MapId id : kAllMaps) out.emplace_back(to_string(id));
    return out;
  });
  m.def("function_names", [] {
    std::vector<std::string> out;
    for (FunctionId id : kAllFunctions) out.emplace_back(to_string(id));
    return out;
  });
  m.def("default_map_params", [] { return map_params_to_json(MapParams{}).dump(); });

  m.def(
      "generate_series",
      [](const std::string& map, std::size_t length, std::optional<std::vector<double>> initial_state,
         std::optional<std::size_t> burn_in, std::uint64_t seed) {
        const MapId id = map_arg(map);
        const MapParams params;
        const std::vector<double> init = initial_state.value_or(default_initial_state(id));
        ChaoticSeries s;
        {
          py::gil_scoped_release release;
          s = generate_series(id, params, length, init, burn_in.value_or(params.burn_in), seed);
        }
        return series_array(s);
      },
      py::arg("map"), py::arg("length"), py::arg("initial_state") = py::none(), py::arg("burn_in") = py::none(),
      py::arg("seed") = 0);

  m.def(
      "lyapunov",
      [](const std::string& map, std::size_t steps, double delta0) {
        py::gil_scoped_release release;
        return estimate_lyapunov(map_arg(map), MapParams{}, steps, delta0);
      },
      py::arg("map"), py::arg("steps") = 50000, py::arg("delta0") = 1e-8);

  m.def(
      "evaluate", [](const std::string& fn, double x, double y) { return evaluate(benchmark(function_arg(fn)), x, y); },
      py::arg("function"), py::arg("x"), py::arg("y"));

  m.def("benchmarks", [] {
    py::list out;
    for (const auto& fn : registry()) {
      py::dict d;
      d["name"] = std::string(fn.name);
      d["box"] = py::make_tuple(fn.box.x_min, fn.box.x_max, fn.box.y_min, fn.box.y_max);
      py::list optima;
      for (const auto& o : fn.optima) optima.append(py::make_tuple(o.x, o.y));
      d["optima"] = optima;
      d["optimum_value"] = fn.optimum_value;
      out.append(d);
    }
    return out;
  });

  m.def(
      "population_entropy",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> points, std::tuple<double, double, double, double> box,
         std::size_t bins, double k, const std::string& base) {
        if (points.ndim() != 2 || points.shape(1) != 2) {
          throw Error(ErrorKind::InvalidRequest, "points must have shape (n, 2)");
        }
        Population pop(static_cast<std::size_t>(points.shape(0)));
        auto r = points.unchecked<2>();
        for (py::ssize_t i = 0; i < points.shape(0); ++i) pop[i] = {r(i, 0), r(i, 1)};
        EntropyConfig cfg;
        cfg.bins_per_axis = bins;
        cfg.k_constant = k;
        if (base == "2") cfg.log_base = LogBase::Two;
        else if (base == "e") cfg.log_base = LogBase::E;
        else throw Error(ErrorKind::InvalidRequest, "log base must be '2' or 'e'");
        const auto [x0, x1, y0, y1] = box;
        return population_entropy(pop, SearchBox{x0, x1, y0, y1}, cfg);
      },
      py::arg("points"), py::arg("box"), py::arg("bins") = 16, py::arg("k") = 1.0, py::arg("log_base") = "2");

  m.def(
      "run_trial",
      [](const std::string& function, const std::string& map, std::uint64_t seed, std::size_t trial_index,
         const std::string& config_json) {
        ExperimentConfig cfg = config_arg(config_json);
        cfg.master_seed = seed;
        TrialRecord r;
        {
          py::gil_scoped_release release;
          r = run_trial(cfg, function_arg(function), map_arg(map), trial_index);
        }
        py::dict d;
        d["function"] = std::string(to_string(r.function));
        d["map"] = std::string(to_string(r.map));
        d["trial"] = r.trial_index;
        d["initial_entropy"] = r.initial_entropy;
        d["best_value"] = r.best_value;
        d["best_fitness"] = r.best_fitness;
        d["best_point"] = py::make_tuple(r.best_point.x, r.best_point.y);
        d["success"] = r.success;
        d["rng_seed"] = r.rng_seed;
        d["retries"] = r.retries;
        d["error"] = r.error.empty() ? py::object(py::none()) : py::object(py::str(r.error));
        return d;
      },
      py::arg("function"), py::arg("map"), py::arg("seed") = ExperimentConfig{}.master_seed,
      py::arg("trial_index") = 0, py::arg("config_json") = "");

  m.def(
      "run_experiment",
      [](const std::string& config_json, const std::string& output_dir) {
        const ExperimentConfig cfg = config_arg(config_json);
        std::string text;
        {
          py::gil_scoped_release release;
          const ExperimentReport report = run_experiment(cfg);
          if (!output_dir.empty()) export_all(report, output_dir);
          text = report_to_json(report).dump();
        }
        return text;
      },
      py::arg("config_json") = "", py::arg("output_dir") = "");

  m.def(
      "resolve_config", [](const std::string& config_json) { return config_to_json(config_arg(config_json)).dump(); },
      py::arg("config_json") = "");

  m.def(
      "spearman",
      [](const std::vector<double>& a, const std::vector<double>& b) { return spearman_correlation(a, b); },
      py::arg("a"), py::arg("b"));

  m.def(
      "compute_performance",
      [](const std::vector<bool>& successes) {
        std::vector<TrialRecord> records(successes.size());
        for (std::size_t i = 0; i < successes.size(); ++i) records[i].success = successes[i];
        return compute_performance(records);
      },
      py::arg("successes"));
}
