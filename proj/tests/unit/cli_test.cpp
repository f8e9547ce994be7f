#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "lanecraft/common/rng.hpp"
#include "lanecraft/nn/checkpoint.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int status = -1;
  std::string output;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(LANECRAFT_CLI_PATH) + " " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) r.output.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::size_t lines(const fs::path& p) {
  const std::string s = slurp(p);
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    std::random_device rd;
    dir_ = fs::temp_directory_path() / ("lanecraft_cli_" + std::to_string(rd()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write_config(const std::string& name, const std::string& body) {
    const auto p = dir_ / name;
    std::ofstream(p) << body;
    return p;
  }

  fs::path random_checkpoint(lanecraft::nn::NetworkShape shape) {
    lanecraft::Rng rng(5);
    const auto net = lanecraft::nn::QNetwork::initialized(shape, rng);
    const auto p = dir_ / "weights.lqnw";
    lanecraft::nn::save_weights(net, p);
    return p;
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, MissingConfigIsUsageError) {
  const auto r = run("baseline --config " + (dir_ / "nope.json").string() + " --out " + (dir_ / "o").string());
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.output.find("nope.json"), std::string::npos) << r.output;
}

TEST_F(CliTest, NoSubcommandIsUsageError) { EXPECT_EQ(run("").status, 2); }

TEST_F(CliTest, ZeroEpisodesRejected) {
  const auto r = run("baseline --episodes 0 --out " + (dir_ / "o").string());
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.output.find("episodes must be positive"), std::string::npos) << r.output;
}

TEST_F(CliTest, UnknownConfigKeyIsUsageError) {
  const auto cfg = write_config("bad.json", R"({"trainer": {"bogus": 1}})");
  const auto r = run("baseline --config " + cfg.string() + " --out " + (dir_ / "o").string());
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.output.find("trainer.bogus"), std::string::npos) << r.output;
}

TEST_F(CliTest, BaselineIsReproducible) {
  const auto a = dir_ / "a", b = dir_ / "b";
  ASSERT_EQ(run("baseline --episodes 3 --seed 11 --out " + a.string()).status, 0);
  ASSERT_EQ(run("baseline --episodes 3 --seed 11 --out " + b.string()).status, 0);
  EXPECT_EQ(lines(a / "baseline.csv"), 4u);
  EXPECT_EQ(slurp(a / "baseline.csv"), slurp(b / "baseline.csv"));
  EXPECT_TRUE(fs::exists(a / "manifest.json"));
  const auto c = dir_ / "c";
  ASSERT_EQ(run("baseline --episodes 3 --seed 12 --out " + c.string()).status, 0);
  EXPECT_NE(slurp(a / "baseline.csv"), slurp(c / "baseline.csv"));
}

TEST_F(CliTest, EnvironmentSeedIsOverriddenByFlag) {
  const auto a = dir_ / "a", b = dir_ / "b";
  ASSERT_EQ(run("baseline --episodes 2 --seed 11 --out " + a.string()).status, 0);
  const std::string cli = LANECRAFT_CLI_PATH;
  const std::string cmd = "LANECRAFT_SEED=11 " + cli + " baseline --episodes 2 --out " + b.string() + " >/dev/null";
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  EXPECT_EQ(slurp(a / "baseline.csv"), slurp(b / "baseline.csv"));
  const std::string cmd2 =
      "LANECRAFT_SEED=3 " + cli + " baseline --seed 11 --episodes 2 --out " + (dir_ / "c").string() + " >/dev/null";
  ASSERT_EQ(std::system(cmd2.c_str()), 0);
  EXPECT_EQ(slurp(a / "baseline.csv"), slurp(dir_ / "c" / "baseline.csv"));
}

TEST_F(CliTest, EvalWritesOneRowPerEpisode) {
  lanecraft::nn::NetworkShape shape;
  shape.outputs = 3;
  const auto ckpt = random_checkpoint(shape);
  const auto out = dir_ / "eval";
  const auto r = run("eval --episodes 4 --checkpoint " + ckpt.string() + " --trace " +
                     (dir_ / "trace.csv").string() + " --out " + out.string());
  ASSERT_EQ(r.status, 0) << r.output;
  EXPECT_EQ(lines(out / "comparison.csv"), 5u);
  EXPECT_EQ(lines(out / "histogram.csv"), 101u);
  EXPECT_TRUE(fs::exists(out / "summary.json"));
  EXPECT_TRUE(fs::exists(out / "actions.csv"));
  EXPECT_GT(lines(dir_ / "trace.csv"), 1u);
}

TEST_F(CliTest, EvalRejectsMismatchedCheckpoint) {
  lanecraft::nn::NetworkShape shape;
  shape.outputs = 5;
  const auto ckpt = random_checkpoint(shape);
  const auto r = run("eval --episodes 1 --checkpoint " + ckpt.string() + " --out " + (dir_ / "o").string());
  EXPECT_EQ(r.status, 2) << r.output;
  const auto missing = run("eval --episodes 1 --checkpoint " + (dir_ / "none.lqnw").string() + " --out " +
                           (dir_ / "o").string());
  EXPECT_NE(missing.status, 0);
}

TEST_F(CliTest, WarmupOnlyTraining) {
  const auto out = dir_ / "train";
  const auto r = run("train --iterations 1000 --seed 2 --out " + out.string());
  ASSERT_EQ(r.status, 0) << r.output;
  EXPECT_NE(r.output.find("warm-up only: learning starts at iteration 50000"), std::string::npos) << r.output;
  EXPECT_TRUE(fs::exists(out / "training_log.csv"));
  EXPECT_TRUE(fs::exists(out / "ckpt_1000.lqnw"));
  EXPECT_TRUE(fs::exists(out / "manifest.json"));
}

TEST_F(CliTest, OvertakingCaseWithAgent2) {
  const auto cfg = write_config("ov.json", R"({"env": {"agent_kind": "agent2"}, "trainer": {"eval_every": 400, "eval_episodes": 5}})");
  const auto out = dir_ / "ov";
  const auto r = run("train --case overtaking --iterations 400 --config " + cfg.string() + " --out " +
                     out.string() + " --workers 2");
  ASSERT_EQ(r.status, 0) << r.output;
  const std::string log = slurp(out / "training_log.csv");
  EXPECT_NE(log.find("action_freq_4"), std::string::npos);
  const auto b = run("baseline --case overtaking --episodes 2 --out " + (dir_ / "b").string());
  EXPECT_EQ(b.status, 0) << b.output;
  const std::string manifest = slurp(dir_ / "b" / "manifest.json");
  EXPECT_NE(manifest.find("overtaking"), std::string::npos);
}
