#include "lanecraft/eval/export.hpp"

#include "lanecraft/common/format.hpp"

namespace lanecraft::eval {

void write_comparison_csv(std::ostream& out, std::span<const ComparisonRecord> records) {
  out << "seed,agent_d,agent_v,ref_v,perf_index,terminal_cause\n";
  for (const auto& r : records) {
    out << r.seed << ',' << format_number(r.agent.distance_m) << ','
        << format_number(r.agent.mean_speed_mps) << ',' << format_number(r.reference.mean_speed_mps)
        << ',' << format_number(r.perf_index) << ',' << env::to_string(r.agent.cause) << '\n';
  }
}

void write_histogram_csv(std::ostream& out, const Histogram& histogram) {
  out << "bin_low,count\n";
  for (std::size_t b = 0; b < histogram.counts.size(); ++b) {
    out << format_number(histogram.bin_low(b)) << ',' << histogram.counts[b] << '\n';
  }
}

void write_actions_csv(std::ostream& out, std::span<const ActionFrequencyRow> rows) {
  std::size_t width = 0;
  for (const auto& row : rows) width = std::max(width, row.frequencies.size());
  out << "run";
  for (std::size_t a = 0; a < width; ++a) out << ",action_freq_" << a;
  out << '\n';
  for (const auto& row : rows) {
    out << row.label;
    for (std::size_t a = 0; a < width; ++a) {
      out << ',' << format_number(a < row.frequencies.size() ? row.frequencies[a] : 0.0);
    }
    out << '\n';
  }
}

void write_baseline_csv(std::ostream& out, std::span<const BaselineRecord> records) {
  out << "seed,distance_m,mean_speed_mps,elapsed_s,completed,terminal_cause,lane_changes\n";
  for (const auto& r : records) {
    out << r.seed << ',' << format_number(r.result.distance_m) << ','
        << format_number(r.result.mean_speed_mps) << ',' << format_number(r.result.elapsed_s) << ','
        << (r.result.completed ? 1 : 0) << ',' << env::to_string(r.result.cause) << ','
        << r.result.lane_changes << '\n';
  }
}

}  // namespace lanecraft::eval
