#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qsec/games/experiment.hpp"

namespace qsec {

struct ExperimentOutcome {
  ExperimentResult result;
  bool pass = false;
};

using ExperimentRunner =
    std::function<ExperimentOutcome(const nlohmann::json& params, std::uint64_t trials, std::uint64_t seed)>;

struct ExperimentSpec {
  std::string name;
  std::string description;
  // Which construction or separation the experiment exercises.
  std::string thesis_ref;
  // Every accepted parameter with its default.
  nlohmann::json defaults;
  std::uint64_t default_trials = 100;
  ExperimentRunner run;
};

const std::vector<ExperimentSpec>& experiment_registry();
// Throws std::invalid_argument for unknown names.
const ExperimentSpec& find_experiment(const std::string& name);

enum class ReportFormat { Json, Csv };

struct ExperimentConfig {
  std::string name;
  nlohmann::json overrides = nlohmann::json::object();
  std::optional<std::uint64_t> trials;
  std::uint64_t seed = 1;
  std::string out;
  ReportFormat format = ReportFormat::Json;
};

// Parses "key=value"; the value becomes a bool, integer, float or string.
std::pair<std::string, nlohmann::json> parse_param(const std::string& kv);
// Reads key=value lines; blank lines and lines starting with '#' are skipped.
// Keys trials, seed, experiment, out and format fill the matching fields; the rest are overrides.
ExperimentConfig parse_config_file(const std::string& path);

// Defaults merged with the overrides. Throws std::invalid_argument on unknown keys or type mismatches.
nlohmann::json resolve_params(const ExperimentSpec& spec, const nlohmann::json& overrides);

ExperimentOutcome run_experiment(const ExperimentConfig& config);

// ExperimentResult fields plus thesis_ref and pass.
nlohmann::json outcome_to_json(const ExperimentOutcome& outcome, const std::string& thesis_ref,
                               bool include_runtime = true);
std::string outcome_to_csv(const ExperimentOutcome& outcome);

}  // namespace qsec
