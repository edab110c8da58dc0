#pragma once

#include <string>

#include "surfflow/config.hpp"
#include "surfflow/evolution.hpp"

namespace surfflow {

// Shortest decimal representation that round-trips to the same double.
std::string format_double(double x);

// Writes series.csv (one row per snapshot), fields_<k>.csv per snapshot and
// run.json (config echo, termination reason, Hoelder reports) into the
// directory.  Deterministic byte-for-byte for a fixed trajectory.
void emit_trajectory(const Trajectory& traj, const RunConfig& config,
                     const std::string& directory);

}  // namespace surfflow
