#include "lanecraft/sim/trace.hpp"

#include "lanecraft/common/format.hpp"

namespace lanecraft::sim {

void write_trace_header(std::ostream& out) { out << "time_s,vehicle_id,x_m,y_m,speed_mps,lane\n"; }

void write_trace_frame(std::ostream& out, const World& world) {
  for (const Vehicle& v : world.vehicles) {
    out << format_number(world.time_s) << ',' << v.id << ',' << format_number(v.x) << ','
        << format_number(v.y) << ',' << format_number(v.speed) << ',' << v.current_lane << '\n';
  }
}

void write_trace_csv(std::ostream& out, std::span<const World> frames) {
  write_trace_header(out);
  for (const World& w : frames) write_trace_frame(out, w);
}

}  // namespace lanecraft::sim
