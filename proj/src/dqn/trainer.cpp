#include "lanecraft/dqn/trainer.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "lanecraft/common/format.hpp"
#include "lanecraft/eval/metrics.hpp"
#include "lanecraft/nn/checkpoint.hpp"

namespace lanecraft::dqn {

LearnerConfig TrainerConfig::learner() const {
  LearnerConfig c;
  c.gamma = gamma;
  c.minibatch = minibatch;
  c.error_clip = error_clip;
  c.optimizer = {learning_rate, rmsprop_decay, rmsprop_epsilon};
  return c;
}

void TrainerConfig::validate() const {
  learner().validate();
  epsilon().validate();
  if (learning_start < 0) throw std::invalid_argument("learning_start must be non-negative");
  if (target_update <= 0) throw std::invalid_argument("target_update must be positive");
  if (total_iterations < 0) throw std::invalid_argument("total_iterations must be non-negative");
  if (eval_every <= 0) throw std::invalid_argument("eval_every must be positive");
  if (eval_episodes <= 0) throw std::invalid_argument("eval_episodes must be positive");
  if (replay_capacity == 0) throw std::invalid_argument("replay_capacity must be positive");
  if (workers <= 0) throw std::invalid_argument("workers must be positive");
}

void write_training_log_header(std::ostream& out, int action_count) {
  out << "iteration,collision_free_fraction,perf_index_mean,perf_index_std";
  for (int a = 0; a < action_count; ++a) out << ",action_freq_" << a;
  out << ",mean_loss,epsilon\n";
}

void write_training_log_row(std::ostream& out, const TrainingLogRow& row) {
  out << row.iteration << ',' << format_number(row.collision_free_fraction) << ','
      << format_number(row.perf_index_mean) << ',' << format_number(row.perf_index_std);
  for (double f : row.action_frequencies) out << ',' << format_number(f);
  out << ',' << format_number(row.mean_loss) << ',' << format_number(row.epsilon) << '\n';
}

namespace {

nn::QNetwork initial_network(const TrainingSetup& setup) {
  nn::NetworkShape shape = setup.network;
  shape.outputs = env::action_count(setup.episode.env.agent_kind);
  Rng rng(derive_seed(setup.trainer.seed, Stream::kNetworkInit, 0));
  return nn::QNetwork::initialized(shape, rng);
}

}  // namespace

Trainer::Trainer(TrainingSetup setup)
    : setup_(std::move(setup)),
      learner_(initial_network(setup_), setup_.trainer.learner()),
      replay_(setup_.trainer.replay_capacity),
      env_(setup_.episode.env, setup_.episode.world),
      agent_rng_(derive_seed(setup_.trainer.seed, Stream::kAgent, 0)) {
  setup_.trainer.validate();
  start_episode();
}

void Trainer::start_episode() {
  const auto seed = derive_seed(setup_.trainer.seed, Stream::kTrainEpisodes,
                                static_cast<std::uint64_t>(episodes_started_));
  env_.reset(setup_.episode.make_world(seed));
  ++episodes_started_;
}

void Trainer::step() {
  if (env_.done()) start_episode();
  const auto& cfg = setup_.trainer;

  Transition t;
  t.experience.state = env_.observation();
  const double eps = epsilon_at(iteration_, cfg.epsilon());
  t.experience.action = select_action(learner_.online(), t.experience.state, eps, agent_rng_);
  const env::StepOutcome outcome = env_.step(t.experience.action);
  t.experience.reward = outcome.reward;
  t.experience.next_state = outcome.observation;
  t.cause = outcome.cause;
  t.experience.terminal =
      outcome.cause == env::TerminalCause::kCollision || outcome.cause == env::TerminalCause::kOffRoad;
  t.stored = outcome.cause != env::TerminalCause::kEpisodeComplete;
  if (t.stored) replay_.push(t.experience);
  if (observer_) observer_(t);

  ++iteration_;
  if (iteration_ >= cfg.learning_start && replay_.size() >= static_cast<std::size_t>(cfg.minibatch)) {
    const UpdateStats stats = learner_.train_step(replay_, agent_rng_);
    loss_sum_ += stats.loss;
    ++loss_count_;
  }
  if (iteration_ % cfg.target_update == 0) learner_.sync_target();
}

TrainingLogRow Trainer::evaluate() {
  const auto& cfg = setup_.trainer;
  const auto seeds = eval::episode_seeds(
      cfg.seed, Stream::kEvalEpisodes,
      static_cast<std::uint64_t>(evaluations_) * static_cast<std::uint64_t>(cfg.eval_episodes),
      static_cast<std::size_t>(cfg.eval_episodes));
  ++evaluations_;
  const auto records = eval::compare_episodes(learner_.online(), setup_.episode, seeds, cfg.workers);
  const auto summary = eval::summarize(records, learner_.online().output_count());

  TrainingLogRow row;
  row.iteration = iteration_;
  row.collision_free_fraction = summary.collision_free_fraction;
  row.perf_index_mean = summary.perf_index_mean;
  row.perf_index_std = summary.perf_index_std;
  row.action_frequencies = summary.action_frequencies;
  row.mean_loss = loss_count_ > 0 ? loss_sum_ / static_cast<double>(loss_count_)
                                  : std::numeric_limits<double>::quiet_NaN();
  row.epsilon = epsilon_at(iteration_, cfg.epsilon());
  row.updates = learner_.updates();
  loss_sum_ = 0;
  loss_count_ = 0;
  return row;
}

std::vector<TrainingLogRow> Trainer::run(const RowCallback& on_row) {
  std::vector<TrainingLogRow> log;
  while (iteration_ < setup_.trainer.total_iterations) {
    step();
    if (iteration_ % setup_.trainer.eval_every == 0) {
      log.push_back(evaluate());
      if (on_row) on_row(log.back(), learner_.online());
    }
  }
  return log;
}

TrainingResult run_training(const TrainingSetup& setup, const std::filesystem::path& out_dir,
                            std::ostream* progress) {
  std::filesystem::create_directories(out_dir);
  const auto log_path = out_dir / "training_log.csv";
  std::ofstream log(log_path, std::ios::trunc);
  if (!log) throw std::runtime_error("cannot open " + log_path.string() + " for writing");

  Trainer trainer(setup);
  write_training_log_header(log, trainer.learner().online().output_count());
  log.flush();

  TrainingResult result;
  auto checkpoint_path = [&](long iteration) {
    return out_dir / ("ckpt_" + std::to_string(iteration) + ".lqnw");
  };
  result.log = trainer.run([&](const TrainingLogRow& row, const nn::QNetwork& net) {
    write_training_log_row(log, row);
    log.flush();
    if (!log) throw std::runtime_error("failed writing " + log_path.string());
    nn::save_weights(net, checkpoint_path(row.iteration));
    if (progress) {
      *progress << "iteration " << row.iteration << ": completed "
                << format_number(row.collision_free_fraction) << ", perf index "
                << format_number(row.perf_index_mean) << ", loss " << format_number(row.mean_loss)
                << ", epsilon " << format_number(row.epsilon) << '\n';
    }
  });
  result.iterations = trainer.iteration();
  result.updates = trainer.learner().updates();
  result.final_checkpoint = checkpoint_path(result.iterations);
  if (result.log.empty() || result.log.back().iteration != result.iterations) {
    nn::save_weights(trainer.learner().online(), result.final_checkpoint);
  }
  return result;
}

}  // namespace lanecraft::dqn
