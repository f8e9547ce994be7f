#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "lanecraft/dqn/trainer.hpp"
#include "lanecraft/eval/rollout.hpp"

namespace lanecraft::config {

/// Invalid or unknown configuration entry. `key` is the dotted path.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key.empty() ? message : key + ": " + message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

struct ExperimentConfig {
  std::uint64_t seed = 0;
  sim::ScenarioConfig scenario;
  sim::ScenarioOptions scenario_options;
  sim::WorldParams world;
  env::EnvConfig env;
  driver::MobilParams mobil;
  nn::NetworkShape network;
  dqn::TrainerConfig trainer;

  /// Propagates shared values (ego speed limit, action count, seed) and
  /// validates every section.
  void resolve();

  eval::EvalSetup eval_setup() const;
  dqn::TrainingSetup training_setup() const;
};

/// Defaults overridden by the entries of `doc`. Every key must be known.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Full resolved configuration in the same layout parse_config reads.
nlohmann::json to_json(const ExperimentConfig& config);

}  // namespace lanecraft::config
