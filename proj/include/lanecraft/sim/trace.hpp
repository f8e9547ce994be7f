#pragma once

#include <ostream>
#include <span>

#include "lanecraft/sim/world.hpp"

namespace lanecraft::sim {

/// Writes `time_s,vehicle_id,x_m,y_m,speed_mps,lane` rows, one per vehicle per frame.
void write_trace_header(std::ostream& out);
void write_trace_frame(std::ostream& out, const World& world);
void write_trace_csv(std::ostream& out, std::span<const World> frames);

}  // namespace lanecraft::sim
