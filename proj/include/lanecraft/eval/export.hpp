#pragma once

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "lanecraft/eval/metrics.hpp"
#include "lanecraft/eval/rollout.hpp"

namespace lanecraft::eval {

/// seed,agent_d,agent_v,ref_v,perf_index,terminal_cause
void write_comparison_csv(std::ostream& out, std::span<const ComparisonRecord> records);

/// bin_low,count
void write_histogram_csv(std::ostream& out, const Histogram& histogram);

struct ActionFrequencyRow {
  std::string label;  ///< iteration number or run name
  std::vector<double> frequencies;
};

/// run,action_freq_0,...,action_freq_{n-1}
void write_actions_csv(std::ostream& out, std::span<const ActionFrequencyRow> rows);

/// seed,distance_m,mean_speed_mps,elapsed_s,completed,terminal_cause,lane_changes
void write_baseline_csv(std::ostream& out, std::span<const BaselineRecord> records);

}  // namespace lanecraft::eval
