#pragma once

#include <filesystem>

#include <json.hpp>

#include "cga/harness.hpp"

namespace cga {

/// Fully resolved configuration as JSON; every field is written.
nlohmann::json config_to_json(const ExperimentConfig& cfg);

/// Missing keys keep their defaults; unknown keys, wrong types and
/// unresolvable names raise Error(InvalidRequest). A report mirror (an object
/// with a "config" member) is accepted as well.
ExperimentConfig config_from_json(const nlohmann::json& doc);

ExperimentConfig load_config(const std::filesystem::path& path);

nlohmann::json map_params_to_json(const MapParams& params);

/// The report mirror written to report.json: config, benchmarks, pairs, maps,
/// the entropy-performance correlation and every trial.
nlohmann::json report_to_json(const ExperimentReport& report);

}  // namespace cga
