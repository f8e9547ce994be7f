#include "lanecraft/config/experiment_config.hpp"

#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <type_traits>

namespace lanecraft::config {

using nlohmann::json;

namespace {

struct Field {
  std::function<void(const json&, const std::string&)> read;
  std::function<json()> write;
};

using FieldTable = std::map<std::string, Field>;

template <typename T>
Field number(T& target) {
  return Field{
      [&target](const json& v, const std::string& key) {
        if constexpr (std::is_floating_point_v<T>) {
          if (!v.is_number()) throw ConfigError(key, "expected a number");
          target = v.get<double>();
        } else if constexpr (std::is_unsigned_v<T>) {
          if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<long long>() < 0)) {
            throw ConfigError(key, "expected a non-negative integer");
          }
          target = static_cast<T>(v.get<unsigned long long>());
        } else {
          if (!v.is_number_integer()) throw ConfigError(key, "expected an integer");
          const auto value = v.get<long long>();
          if (value < std::numeric_limits<T>::min() || value > std::numeric_limits<T>::max()) {
            throw ConfigError(key, "integer out of range");
          }
          target = static_cast<T>(value);
        }
      },
      [&target] { return json(target); }};
}

template <typename E>
Field enumeration(E& target, E (*parse)(const std::string&), const char* (*print)(E)) {
  return Field{
      [&target, parse](const json& v, const std::string& key) {
        if (!v.is_string()) throw ConfigError(key, "expected a string");
        try {
          target = parse(v.get<std::string>());
        } catch (const std::invalid_argument& e) {
          throw ConfigError(key, e.what());
        }
      },
      [&target, print] { return json(print(target)); }};
}

FieldTable fields(ExperimentConfig& c) {
  FieldTable t;
  t["seed"] = number(c.seed);

  auto& sc = c.scenario;
  t["sim.scenario.d_long"] = number(sc.d_long);
  t["sim.scenario.d_delta"] = number(sc.d_delta);
  t["sim.scenario.v_plus_min"] = number(sc.v_plus_min);
  t["sim.scenario.v_plus_max"] = number(sc.v_plus_max);
  t["sim.scenario.v_minus_min"] = number(sc.v_minus_min);
  t["sim.scenario.v_minus_max"] = number(sc.v_minus_max);
  t["sim.scenario.v_init_ego"] = number(sc.v_init_ego);
  t["sim.scenario.v_max_ego"] = number(sc.v_max_ego);
  t["sim.scenario.rng_seed"] = number(sc.rng_seed);
  t["sim.scenario.surrounding_vehicle_count"] = number(sc.surrounding_vehicle_count);
  t["sim.scenario.case"] = enumeration(sc.scenario_case, &sim::scenario_case_from_string,
                                       static_cast<const char* (*)(sim::ScenarioCase)>(&sim::to_string));

  auto& so = c.scenario_options;
  t["sim.road.lane_width"] = number(so.lane_width);
  t["sim.road.d_max"] = number(so.d_max);
  t["sim.vehicles.ego_length"] = number(so.ego_length);
  t["sim.vehicles.ego_width"] = number(so.ego_width);
  t["sim.vehicles.car_length"] = number(so.car_length);
  t["sim.vehicles.car_width"] = number(so.car_width);
  t["sim.generator.lead_distance"] = number(so.lead_distance);
  t["sim.generator.oncoming_min"] = number(so.oncoming_min);
  t["sim.generator.oncoming_max"] = number(so.oncoming_max);
  t["sim.generator.breakpoint_min"] = number(so.spacing.min_m);
  t["sim.generator.breakpoint_max"] = number(so.spacing.max_m);
  t["sim.generator.screen_horizon"] = number(so.screen_horizon);
  t["sim.generator.screen_braking"] = number(so.screen_braking);
  t["sim.generator.screen_min_gap"] = number(so.screen_min_gap);
  t["sim.generator.max_attempts"] = number(so.max_attempts);

  t["sim.substep_dt"] = number(c.env.substep_dt);
  t["sim.decision_dt"] = number(c.env.decision_dt);
  t["sim.max_braking"] = number(c.world.max_braking);
  t["sim.near_collision_gap"] = number(c.world.near_collision_gap);
  auto& lat = c.world.lateral;
  t["sim.lateral.k_near"] = number(lat.k_near);
  t["sim.lateral.k_far"] = number(lat.k_far);
  t["sim.lateral.near_distance"] = number(lat.near_distance);
  t["sim.lateral.far_distance"] = number(lat.far_distance);
  t["sim.lateral.settle_tolerance"] = number(lat.settle_tolerance);

  auto& idm = c.world.idm;
  t["idm.d0"] = number(idm.d0);
  t["idm.T"] = number(idm.T);
  t["idm.a"] = number(idm.a);
  t["idm.b"] = number(idm.b);
  t["idm.delta"] = number(idm.delta);

  t["mobil.p"] = number(c.mobil.p);
  t["mobil.a_th"] = number(c.mobil.a_th);
  t["mobil.b_safe"] = number(c.mobil.b_safe);

  t["env.agent_kind"] = enumeration(c.env.agent_kind, &env::agent_kind_from_string,
                                    static_cast<const char* (*)(env::AgentKind)>(&env::to_string));
  t["env.ds_max"] = number(c.env.normalization.ds_max);
  t["env.v_norm_max"] = number(c.env.normalization.v_max);
  t["env.v_ego_norm"] = number(c.env.normalization.v_ego_max);
  t["env.max_steps"] = number(c.env.max_steps);
  t["env.reward.collision"] = number(c.env.reward.collision_penalty);
  t["env.reward.near_collision"] = number(c.env.reward.near_collision_penalty);
  t["env.reward.lane_change"] = number(c.env.reward.lane_change_penalty);

  t["net.architecture"] = enumeration(c.network.architecture, &nn::architecture_from_string,
                                      static_cast<const char* (*)(nn::Architecture)>(&nn::to_string));
  t["net.hidden"] = number(c.network.hidden);
  t["net.conv1"] = number(c.network.conv1);
  t["net.conv2"] = number(c.network.conv2);
  t["net.full"] = number(c.network.full);

  auto& tr = c.trainer;
  t["trainer.gamma"] = number(tr.gamma);
  t["trainer.learning_start"] = number(tr.learning_start);
  t["trainer.epsilon_start"] = number(tr.epsilon_start);
  t["trainer.epsilon_end"] = number(tr.epsilon_end);
  t["trainer.epsilon_decay_iterations"] = number(tr.epsilon_decay_iterations);
  t["trainer.learning_rate"] = number(tr.learning_rate);
  t["trainer.rmsprop_decay"] = number(tr.rmsprop_decay);
  t["trainer.rmsprop_epsilon"] = number(tr.rmsprop_epsilon);
  t["trainer.minibatch"] = number(tr.minibatch);
  t["trainer.target_update"] = number(tr.target_update);
  t["trainer.total_iterations"] = number(tr.total_iterations);
  t["trainer.eval_every"] = number(tr.eval_every);
  t["trainer.eval_episodes"] = number(tr.eval_episodes);
  t["trainer.replay_capacity"] = number(tr.replay_capacity);
  t["trainer.error_clip"] = number(tr.error_clip);
  t["trainer.workers"] = number(tr.workers);
  return t;
}

bool is_section(const FieldTable& table, const std::string& prefix) {
  auto it = table.lower_bound(prefix + ".");
  return it != table.end() && it->first.compare(0, prefix.size() + 1, prefix + ".") == 0;
}

void read_node(const json& node, const std::string& path, FieldTable& table) {
  for (auto it = node.begin(); it != node.end(); ++it) {
    const std::string key = path.empty() ? it.key() : path + "." + it.key();
    if (auto field = table.find(key); field != table.end()) {
      field->second.read(it.value(), key);
    } else if (is_section(table, key)) {
      if (!it.value().is_object()) throw ConfigError(key, "expected an object");
      read_node(it.value(), key, table);
    } else {
      throw ConfigError(key, "unknown configuration key");
    }
  }
}

template <typename F>
void check(const std::string& section, F&& validate) {
  try {
    validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(section, e.what());
  }
}

}  // namespace

void ExperimentConfig::resolve() {
  world.v_max_ego = scenario.v_max_ego;
  env.reward.v_max_ego = scenario.v_max_ego;
  env.reward.decision_dt = env.decision_dt;
  trainer.seed = seed;
  scenario.rng_seed = seed;
  check("sim.scenario", [&] { scenario.validate(); });
  check("sim", [&] { scenario_options.validate(); });
  check("sim", [&] { world.validate(); });
  check("mobil", [&] { mobil.validate(); });
  check("env", [&] { env.validate(); });
  network.outputs = env::action_count(env.agent_kind);
  check("net", [&] { network.validate(); });
  check("trainer", [&] { trainer.validate(); });
}

eval::EvalSetup ExperimentConfig::eval_setup() const {
  return eval::EvalSetup{scenario, scenario_options, world, env, mobil};
}

dqn::TrainingSetup ExperimentConfig::training_setup() const {
  return dqn::TrainingSetup{eval_setup(), network, trainer};
}

ExperimentConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("", "configuration must be a JSON object");
  ExperimentConfig config;
  FieldTable table = fields(config);
  read_node(doc, "", table);
  // The scenario seed is an alias of the run seed.
  const json::json_pointer scenario_seed("/sim/scenario/rng_seed");
  if (doc.contains(scenario_seed)) {
    if (!doc.contains("seed")) {
      config.seed = config.scenario.rng_seed;
    } else if (config.seed != config.scenario.rng_seed) {
      throw ConfigError("sim.scenario.rng_seed", "differs from seed");
    }
  }
  config.resolve();
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("", "malformed JSON in " + path.string() + ": " + e.what());
  }
  return parse_config(doc);
}

json to_json(const ExperimentConfig& config) {
  ExperimentConfig copy = config;
  json doc = json::object();
  for (const auto& [key, field] : fields(copy)) {
    std::string pointer = "/" + key;
    for (auto& ch : pointer) {
      if (ch == '.') ch = '/';
    }
    doc[json::json_pointer(pointer)] = field.write();
  }
  return doc;
}

}  // namespace lanecraft::config
