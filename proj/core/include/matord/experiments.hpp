#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "matord/random.hpp"

namespace matord {

struct ExperimentConfig {
  std::uint64_t seed = kDefaultSeed;
  // multiplies every sample budget; 1 gives the pinned acceptance budgets
  double budget_scale = 1.0;
};

struct ExperimentRecord {
  std::string name;
  std::string anchor;
  std::uint64_t seed = 0;
  nlohmann::json bounds;
  bool pass = false;
};

struct ExperimentInfo {
  std::string name;
  std::string anchor;  // the claim the experiment reproduces
};

const std::vector<ExperimentInfo>& experiment_registry();

// Throws UnknownExperiment.
ExperimentRecord run_experiment(const std::string& name, const ExperimentConfig& config = {});

nlohmann::json to_json(const ExperimentRecord& r);

}  // namespace matord
