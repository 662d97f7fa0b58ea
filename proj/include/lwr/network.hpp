#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lwr/flux.hpp"

namespace lwr {

/// Configuration rejected: carries a path-qualified message like
/// "junctions[0].schedule[1].matrix: column 2 sums to 0.9".
class config_error : public std::runtime_error {
public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

struct RoadSpec {
  std::string id;
  double a = 0.0;
  double b = 1.0;  // traffic flows from a to b
  // Piecewise-constant initial datum: values[k] on [breaks[k-1], breaks[k]),
  // breaks strictly increasing inside (a,b), values.size() == breaks.size()+1.
  std::vector<double> breaks;
  std::vector<double> values;

  double length() const { return b - a; }
};

/// Column-stochastic m x n matrix of turning fractions alpha_{ji}.
struct DistributionMatrix {
  int m = 0;  // outgoing roads
  int n = 0;  // incoming roads
  std::vector<double> entries;  // row-major, entries[j*n + i]

  double at(int j, int i) const { return entries[j * n + i]; }
  double& at(int j, int i) { return entries[j * n + i]; }

  /// Rows with two equal entries, violating the distinctness hypothesis of
  /// the junction-uniqueness theorem. Reported as a warning, not an error.
  std::vector<int> rows_violating_distinctness() const;
};

struct ScheduleEntry {
  double t = 0.0;
  DistributionMatrix matrix;
  std::vector<int> lights;  // per incoming road, 1 = green, 0 = red
};

struct JunctionSpec {
  std::string id;
  std::vector<std::string> incoming;
  std::vector<std::string> outgoing;
  std::vector<ScheduleEntry> schedule;  // activation times increasing, first 0
  std::optional<double> period;

  int n() const { return static_cast<int>(incoming.size()); }
  int m() const { return static_cast<int>(outgoing.size()); }

  /// Schedule entry active at time t (right-continuous, periodic extension).
  const ScheduleEntry& entry_at(double t) const;

  /// Number of per-road coefficient/light jumps in (t1, t2], counted as in
  /// the jump functional: one per incoming road whose alpha column changes
  /// plus one per incoming road whose light flips, at each switch time.
  int jump_count(double t1, double t2) const;

  /// Next schedule discontinuity strictly after t, or nullopt if static.
  std::optional<double> next_jump_after(double t) const;
};

struct TrackingParams {
  double delta = 0.05;   // rarefaction discretization step
  double horizon = 1.0;  // simulation end time
};

struct FluxParams {
  std::string family = "smooth";  // "smooth" or "kinked"
  double fmax = 1.0;
  double nu = 0.05;  // only for kinked

  FluxModel build() const;
};

struct NetworkSpec {
  FluxParams flux;
  std::vector<RoadSpec> roads;
  std::vector<JunctionSpec> junctions;
  TrackingParams tracking;
  std::vector<std::string> warnings;  // non-fatal validation notes

  int road_index(const std::string& id) const;  // -1 if absent

  /// Junction this road feeds into at x = b, and the road's slot there.
  struct Attachment {
    int junction = -1;  // index into junctions, -1 when free end
    int slot = -1;      // position within incoming/outgoing list
  };
  Attachment downstream_of(int road) const;  // via road's b end (incoming)
  Attachment upstream_of(int road) const;    // via road's a end (outgoing)

  void validate();  // throws config_error; fills warnings
};

NetworkSpec parse_network(const std::string& json_text);
std::string serialize_network(const NetworkSpec& spec);

}  // namespace lwr
