#pragma once

#include <istream>
#include <ostream>
#include <string_view>
#include <vector>

#include "flatin/simulator.hpp"

namespace flatin::cli {

inline constexpr std::string_view kCsvHeader = "t,x1,x2,x3,y,yref,dy,ddy,u,uf,e,flags";

/// Header plus one row per trace row; doubles as %.17g, LF line endings.
void write_trace_csv(std::ostream& out, const sim::SimulationTrace& trace);

/// Inverse of write_trace_csv. Throws flatin::Error on a malformed file.
std::vector<sim::TraceRow> read_trace_csv(std::istream& in);

}  // namespace flatin::cli
