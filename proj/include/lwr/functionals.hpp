#pragma once

#include <vector>

#include "lwr/flux.hpp"
#include "lwr/network.hpp"

namespace lwr {

/// Piecewise-constant profile of one road at a fixed time: values[k] holds
/// on [xs[k], xs[k+1]) with xs.front() == a and xs.back() == b.
struct RoadProfile {
  double a = 0.0;
  double b = 0.0;
  std::vector<double> xs;      // size values.size() + 1
  std::vector<double> values;

  double trace_at_a() const { return values.front(); }
  double trace_at_b() const { return values.back(); }
};

/// Exact state of the whole network at one time.
struct Snapshot {
  double time = 0.0;
  std::vector<RoadProfile> roads;  // same order as NetworkSpec::roads
};

double total_variation(const Snapshot& s);
double flux_total_variation(const Snapshot& s, const FluxModel& m);
double total_mass(const Snapshot& s);

/// Big-wave functional N = sum_J #Phi_J + sum_i #G^i with the sgn(0) = 0
/// convention: Phi_J counts junction traces in [0,sigma] (incoming) or
/// [sigma,1] (outgoing); G^i counts fronts whose values straddle sigma.
int big_wave_count(const Snapshot& s, const NetworkSpec& spec,
                   const FluxModel& m);

/// Per-junction bad-trace counts, same order as spec.junctions.
std::vector<int> bad_trace_counts(const Snapshot& s, const NetworkSpec& spec,
                                  const FluxModel& m);

/// Exact L1 distance between two states of the same network.
double l1_distance(const Snapshot& s1, const Snapshot& s2);

struct FunctionalSample {
  double time = 0.0;
  long event_index = 0;
  double tv_density = 0.0;
  double tv_flux = 0.0;
  int big_waves = 0;
  double mass = 0.0;
  std::vector<int> phi_per_junction;
};

FunctionalSample sample_functionals(const Snapshot& s, const NetworkSpec& spec,
                                    const FluxModel& m, long event_index);

}  // namespace lwr
