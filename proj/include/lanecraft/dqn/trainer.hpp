#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "lanecraft/dqn/learner.hpp"
#include "lanecraft/dqn/policy.hpp"
#include "lanecraft/dqn/replay_memory.hpp"
#include "lanecraft/eval/rollout.hpp"

namespace lanecraft::dqn {

struct TrainerConfig {
  double gamma = 0.99;
  long learning_start = 50000;
  double epsilon_start = 1.0;
  double epsilon_end = 0.1;
  long epsilon_decay_iterations = 500000;
  double learning_rate = 0.00025;
  double rmsprop_decay = 0.95;
  double rmsprop_epsilon = 0.01;
  int minibatch = 32;
  long target_update = 30000;
  long total_iterations = 2000000;
  long eval_every = 50000;
  int eval_episodes = 1000;
  std::size_t replay_capacity = 500000;
  double error_clip = 1.0;
  std::uint64_t seed = 0;
  int workers = 1;  ///< evaluation threads

  EpsilonSchedule epsilon() const { return {epsilon_start, epsilon_end, epsilon_decay_iterations}; }
  LearnerConfig learner() const;
  void validate() const;
};

struct TrainingSetup {
  eval::EvalSetup episode;
  nn::NetworkShape network;
  TrainerConfig trainer;
};

struct TrainingLogRow {
  long iteration = 0;
  double collision_free_fraction = 0;
  double perf_index_mean = 0;
  double perf_index_std = 0;
  std::vector<double> action_frequencies;
  double mean_loss = 0;  ///< NaN when no update happened since the previous row
  double epsilon = 0;
  long updates = 0;
};

void write_training_log_header(std::ostream& out, int action_count);
void write_training_log_row(std::ostream& out, const TrainingLogRow& row);

/// What happened in one environment step, reported to an optional observer.
struct Transition {
  Experience experience;
  env::TerminalCause cause = env::TerminalCause::kNone;
  bool stored = false;
};

/// Double DQN training on freshly generated episodes. One iteration is one
/// decision step; after `learning_start` iterations every iteration also runs
/// one minibatch update. The last transition of a completed episode is not
/// stored, collisions and off-road exits are stored as terminal, and time-limit
/// truncations are stored as ordinary transitions.
class Trainer {
 public:
  using TransitionObserver = std::function<void(const Transition&)>;

  explicit Trainer(TrainingSetup setup);

  /// Runs one iteration: act, store, update, and sync the target if due.
  void step();

  /// Greedy evaluation of the online network on fresh episodes.
  TrainingLogRow evaluate();

  using RowCallback = std::function<void(const TrainingLogRow&, const nn::QNetwork&)>;
  /// Steps until total_iterations, evaluating every eval_every iterations.
  std::vector<TrainingLogRow> run(const RowCallback& on_row = {});

  void set_transition_observer(TransitionObserver observer) { observer_ = std::move(observer); }

  long iteration() const { return iteration_; }
  long episodes_started() const { return episodes_started_; }
  const DqnLearner& learner() const { return learner_; }
  const ReplayMemory& replay() const { return replay_; }
  const TrainingSetup& setup() const { return setup_; }
  const env::TrafficEnv& environment() const { return env_; }

 private:
  void start_episode();

  TrainingSetup setup_;
  DqnLearner learner_;
  ReplayMemory replay_;
  env::TrafficEnv env_;
  Rng agent_rng_;
  long iteration_ = 0;
  long episodes_started_ = 0;
  long evaluations_ = 0;
  double loss_sum_ = 0;
  long loss_count_ = 0;
  TransitionObserver observer_;
};

struct TrainingResult {
  std::vector<TrainingLogRow> log;
  long iterations = 0;
  long updates = 0;
  std::filesystem::path final_checkpoint;
};

/// Trains and writes training_log.csv plus ckpt_<iteration>.lqnw at every
/// evaluation point and at the final iteration. Progress lines go to `progress`.
TrainingResult run_training(const TrainingSetup& setup, const std::filesystem::path& out_dir,
                            std::ostream* progress = nullptr);

}  // namespace lanecraft::dqn
