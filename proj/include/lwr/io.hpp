#pragma once

#include <string>
#include <vector>

#include "lwr/tracking.hpp"

namespace lwr {

/// Runs the simulation to the given horizon and writes, under out_dir:
///   telemetry.csv      functionals sampled at t=0 and after every event
///   events.csv         the event log
///   snapshot_<t>.csv   exact profiles at each requested time and at the
///                      horizon (road_id, x_left, x_right, rho)
///   spec_normalized.json   the validated network being run
/// Returns the number of events processed.
long run_with_outputs(Simulation& sim, double horizon,
                      const std::string& out_dir,
                      std::vector<double> snapshot_times);

void write_snapshot_csv(const std::string& path, const NetworkSpec& spec,
                        const Snapshot& snap);

}  // namespace lwr
