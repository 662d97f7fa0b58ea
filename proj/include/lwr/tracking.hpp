#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lwr/functionals.hpp"
#include "lwr/network.hpp"
#include "lwr/riemann.hpp"

namespace lwr {

/// Internal consistency violation: an engine bug, not a user error.
class engine_error : public std::runtime_error {
public:
  explicit engine_error(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when the event circuit breaker trips.
class runaway_error : public std::runtime_error {
public:
  explicit runaway_error(const std::string& what)
      : std::runtime_error(what) {}
};

struct Front {
  double pos = 0.0;  // position at the state's current time
  double left = 0.0;
  double right = 0.0;
  double speed = 0.0;
  double birth = 0.0;
  long generation = 0;
};

enum class EventKind { ScheduleJump, JunctionArrival, Collision, FreeEndExit };

const char* to_string(EventKind k);

struct Event {
  double time = 0.0;
  EventKind kind = EventKind::Collision;
  int road = -1;       // road involved (Collision/JunctionArrival/FreeEndExit)
  int junction = -1;   // junction involved (JunctionArrival/ScheduleJump)
  int front_index = -1;  // leading front of a collision or arriving front
};

struct EventRecord {
  long index = 0;
  double time = 0.0;
  EventKind kind = EventKind::Collision;
  std::string road_id;
  std::string junction_id;
  double tv_flux_after = 0.0;
  int big_waves_after = 0;
};

class Simulation {
public:
  Simulation(const NetworkSpec& spec);

  /// Resolves all initial-data jumps and solves every junction once at t=0.
  void initialize();

  double time() const { return time_; }
  long event_count() const { return event_count_; }
  const NetworkSpec& spec() const { return spec_; }
  const FluxModel& flux() const { return flux_; }
  const std::vector<std::vector<Front>>& fronts() const { return fronts_; }
  const std::vector<EventRecord>& event_log() const { return event_log_; }

  std::optional<Event> next_event() const;

  /// Processes a single event; returns false when none remains before the
  /// horizon.
  bool advance();

  /// Observer called after initialization and after every event.
  using Observer = std::function<void(const Simulation&, const Event*)>;

  /// Runs events until none occurs before T, then moves fronts to time T.
  void run_until(double T, const Observer& observer = {});

  /// Exact piecewise-constant state at time t within the current
  /// inter-event interval (defaults to the current time).
  Snapshot snapshot() const;
  Snapshot snapshot_at(double t) const;

  /// Trips after this many events (runaway protection).
  void set_event_limit(long limit) { event_limit_ = limit; }

  /// When enabled, the chaining/ordering invariants are checked after every
  /// event.
  void set_consistency_checks(bool on) { check_consistency_ = on; }

private:
  void move_fronts_to(double t);
  void insert_fan(int road, double x, const WaveFan& fan, double t);
  void handle_collision(const Event& ev);
  void handle_free_end(const Event& ev);
  void resolve_junction(int junction);
  double boundary_trace(int road, bool at_b) const;
  void absorb_boundary_fronts(int road, bool at_b);
  void verify_consistency(const Event& ev) const;
  void log_event(const Event& ev);

  NetworkSpec spec_;
  FluxModel flux_;
  double time_ = 0.0;
  long event_count_ = 0;
  long event_limit_ = 10000000;
  long generation_counter_ = 0;
  bool check_consistency_ = false;
  std::vector<std::vector<Front>> fronts_;  // per road, ordered by position
  std::vector<double> base_values_;  // road value when its front list is empty
  std::vector<EventRecord> event_log_;
};

}  // namespace lwr
