// lanecraft: train, evaluate and benchmark lane-change agents.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "lanecraft/common/format.hpp"
#include "lanecraft/config/experiment_config.hpp"
#include "lanecraft/dqn/trainer.hpp"
#include "lanecraft/eval/export.hpp"
#include "lanecraft/eval/metrics.hpp"
#include "lanecraft/nn/checkpoint.hpp"
#include "lanecraft/sim/trace.hpp"

namespace fs = std::filesystem;
using namespace lanecraft;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> scenario_case;
  std::optional<int> workers;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config_path, "JSON experiment config (defaults apply when omitted)");
  cmd->add_option("--out", o.out_dir, "Output directory")->required();
  cmd->add_option("--seed", o.seed, "Run seed (overrides LANECRAFT_SEED and the config)");
  cmd->add_option("--case", o.scenario_case, "Scenario case: highway or overtaking");
  cmd->add_option("--workers", o.workers, "Evaluation threads");
}

std::optional<std::uint64_t> env_seed() {
  const char* raw = std::getenv("LANECRAFT_SEED");
  if (!raw || !*raw) return std::nullopt;
  try {
    std::size_t used = 0;
    const auto value = std::stoull(raw, &used);
    if (used != std::string(raw).size()) throw std::invalid_argument("trailing characters");
    return value;
  } catch (const std::exception&) {
    throw UsageError(std::string("LANECRAFT_SEED is not a non-negative integer: ") + raw);
  }
}

config::ExperimentConfig resolve_config(const CommonOptions& o) {
  nlohmann::json doc = nlohmann::json::object();
  if (!o.config_path.empty()) {
    if (!fs::exists(o.config_path)) throw UsageError("config file not found: " + o.config_path);
    std::ifstream in(o.config_path);
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw UsageError("malformed JSON in " + o.config_path + ": " + e.what());
    }
  }
  if (!doc.is_object()) throw UsageError("config must be a JSON object: " + o.config_path);
  auto set_seed = [&doc](std::uint64_t s) {
    doc["seed"] = s;
    if (doc.contains(nlohmann::json::json_pointer("/sim/scenario/rng_seed"))) {
      doc["sim"]["scenario"]["rng_seed"] = s;
    }
  };
  if (auto s = env_seed()) set_seed(*s);
  if (o.seed) set_seed(*o.seed);
  if (o.scenario_case) doc["sim"]["scenario"]["case"] = *o.scenario_case;
  if (o.workers) doc["trainer"]["workers"] = *o.workers;
  return config::parse_config(doc);
}

void write_manifest(const fs::path& out, const std::string& subcommand, const CommonOptions& o,
                    const config::ExperimentConfig& cfg, const nlohmann::json& extra = {}) {
  fs::create_directories(out);
  nlohmann::json manifest;
  manifest["subcommand"] = subcommand;
  manifest["config_path"] = o.config_path;
  manifest["output_directory"] = o.out_dir;
  manifest["seed"] = cfg.seed;
  manifest["tool_version"] = LANECRAFT_VERSION;
  manifest["resolved_config"] = config::to_json(cfg);
  for (auto it = extra.begin(); extra.is_object() && it != extra.end(); ++it) manifest[it.key()] = it.value();
  std::ofstream f(out / "manifest.json", std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write " + (out / "manifest.json").string());
  f << manifest.dump(2) << '\n';
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return f;
}

nlohmann::json number_json(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

int cmd_train(const CommonOptions& o, std::optional<long> iterations) {
  auto cfg = resolve_config(o);
  if (iterations) {
    if (*iterations < 0) throw UsageError("iterations must be non-negative");
    cfg.trainer.total_iterations = *iterations;
  }
  const fs::path out(o.out_dir);
  write_manifest(out, "train", o, cfg);

  const auto result = dqn::run_training(cfg.training_setup(), out, &std::cout);
  std::vector<eval::ActionFrequencyRow> actions;
  for (const auto& row : result.log) actions.push_back({std::to_string(row.iteration), row.action_frequencies});
  auto actions_file = open_output(out / "actions.csv");
  eval::write_actions_csv(actions_file, actions);

  std::cout << "trained " << result.iterations << " iterations, " << result.updates
            << " network updates\n";
  if (result.updates == 0) {
    std::cout << "warm-up only: learning starts at iteration " << cfg.trainer.learning_start << '\n';
  }
  std::cout << "final weights: " << result.final_checkpoint.string() << '\n';
  return 0;
}

void check_episodes(int episodes) {
  if (episodes <= 0) throw UsageError("episodes must be positive");
}

int cmd_eval(const CommonOptions& o, const std::string& checkpoint, std::optional<int> episodes_opt,
             const std::string& trace_path) {
  auto cfg = resolve_config(o);
  const int episodes = episodes_opt.value_or(cfg.trainer.eval_episodes);
  check_episodes(episodes);
  nn::QNetwork net = [&] {
    try {
      return nn::load_weights(checkpoint, cfg.network);
    } catch (const nn::CheckpointError& e) {
      if (e.kind() == nn::CheckpointError::Kind::kShapeMismatch) throw UsageError(e.what());
      throw;
    }
  }();
  const fs::path out(o.out_dir);
  write_manifest(out, "eval", o, cfg, {{"checkpoint", checkpoint}, {"episodes", episodes}});

  const auto setup = cfg.eval_setup();
  const auto seeds = eval::episode_seeds(cfg.seed, Stream::kEvalEpisodes, 0, episodes);
  const auto records = eval::compare_episodes(net, setup, seeds, cfg.trainer.workers);
  const auto summary = eval::summarize(records, net.output_count());

  auto comparison = open_output(out / "comparison.csv");
  eval::write_comparison_csv(comparison, records);
  auto histogram = open_output(out / "histogram.csv");
  eval::write_histogram_csv(histogram, summary.histogram);
  auto actions = open_output(out / "actions.csv");
  const std::vector<eval::ActionFrequencyRow> rows{{"eval", summary.action_frequencies}};
  eval::write_actions_csv(actions, rows);
  if (!trace_path.empty()) {
    std::vector<sim::World> frames;
    eval::rollout_agent(net, setup.make_world(seeds.front()), setup, &frames);
    auto trace = open_output(trace_path);
    sim::write_trace_csv(trace, frames);
  }

  nlohmann::json js;
  js["episodes"] = summary.episodes;
  js["collision_free_fraction"] = summary.collision_free_fraction;
  js["perf_index_mean"] = number_json(summary.perf_index_mean);
  js["perf_index_std"] = number_json(summary.perf_index_std);
  js["reference_failures"] = summary.reference_failures;
  js["action_frequencies"] = summary.action_frequencies;
  js["failed_seeds"] = summary.failed_seeds;
  auto summary_file = open_output(out / "summary.json");
  summary_file << js.dump(2) << '\n';

  std::cout << "episodes " << summary.episodes << ", completed "
            << format_number(summary.collision_free_fraction) << ", perf index "
            << format_number(summary.perf_index_mean) << " +- " << format_number(summary.perf_index_std)
            << ", reference failures " << summary.reference_failures << '\n';
  return 0;
}

int cmd_baseline(const CommonOptions& o, std::optional<int> episodes_opt, const std::string& trace_path) {
  auto cfg = resolve_config(o);
  const int episodes = episodes_opt.value_or(cfg.trainer.eval_episodes);
  check_episodes(episodes);
  const fs::path out(o.out_dir);
  write_manifest(out, "baseline", o, cfg, {{"episodes", episodes}});

  const auto setup = cfg.eval_setup();
  const auto seeds = eval::episode_seeds(cfg.seed, Stream::kBaselineEpisodes, 0, episodes);
  const auto records = eval::baseline_episodes(setup, seeds, cfg.trainer.workers);
  const auto summary = eval::summarize_baseline(records);

  auto baseline = open_output(out / "baseline.csv");
  eval::write_baseline_csv(baseline, records);
  if (!trace_path.empty()) {
    std::vector<sim::World> frames;
    eval::rollout_reference(setup.make_world(seeds.front()), setup, &frames);
    auto trace = open_output(trace_path);
    sim::write_trace_csv(trace, frames);
  }

  std::cout << "episodes " << summary.episodes << ", completed "
            << format_number(summary.completed_fraction) << ", mean speed "
            << format_number(summary.mean_speed_mps) << " m/s\n";
  if (!summary.failed_seeds.empty()) {
    std::cout << "not completed (seed):";
    for (auto s : summary.failed_seeds) std::cout << ' ' << s;
    std::cout << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lane-change decision agents: Double DQN training and evaluation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(LANECRAFT_VERSION));

  CommonOptions train_opts, eval_opts, baseline_opts;
  std::optional<long> iterations;
  std::string checkpoint, eval_trace, baseline_trace;
  std::optional<int> eval_episodes, baseline_episodes;

  auto* train = app.add_subcommand("train", "Train a Double DQN agent");
  add_common(train, train_opts);
  train->add_option("--iterations", iterations, "Total training iterations");

  auto* evaluate = app.add_subcommand("eval", "Compare a checkpoint against the reference driver");
  add_common(evaluate, eval_opts);
  evaluate->add_option("--checkpoint", checkpoint, "Weights file")->required();
  evaluate->add_option("--episodes", eval_episodes, "Number of evaluation episodes");
  evaluate->add_option("--trace", eval_trace, "Write a CSV trace of the first episode");

  auto* baseline = app.add_subcommand("baseline", "Run the reference driver alone");
  add_common(baseline, baseline_opts);
  baseline->add_option("--episodes", baseline_episodes, "Number of episodes");
  baseline->add_option("--trace", baseline_trace, "Write a CSV trace of the first episode");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (train->parsed()) return cmd_train(train_opts, iterations);
    if (evaluate->parsed()) return cmd_eval(eval_opts, checkpoint, eval_episodes, eval_trace);
    return cmd_baseline(baseline_opts, baseline_episodes, baseline_trace);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const config::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}
