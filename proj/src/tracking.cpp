#include "lwr/tracking.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lwr {

namespace {
constexpr double kTimeTol = 1e-12;
constexpr double kPosTol = 1e-11;
constexpr double kSpeedFloor = 1e-13;
}  // namespace

const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::ScheduleJump: return "schedule_jump";
    case EventKind::JunctionArrival: return "junction_arrival";
    case EventKind::Collision: return "collision";
    case EventKind::FreeEndExit: return "free_end_exit";
  }
  return "?";
}

Simulation::Simulation(const NetworkSpec& spec)
    : spec_(spec), flux_(spec.flux.build()) {
  fronts_.resize(spec_.roads.size());
  base_values_.resize(spec_.roads.size(), 0.0);
  for (size_t r = 0; r < spec_.roads.size(); ++r)
    base_values_[r] = spec_.roads[r].values.front();
}

void Simulation::initialize() {
  double delta = spec_.tracking.delta;
  for (size_t r = 0; r < spec_.roads.size(); ++r) {
    const auto& road = spec_.roads[r];
    for (size_t k = 0; k < road.breaks.size(); ++k) {
      WaveFan fan = solve_road_riemann(road.values[k], road.values[k + 1],
                                       flux_, delta);
      insert_fan(static_cast<int>(r), road.breaks[k], fan, 0.0);
    }
  }
  for (size_t j = 0; j < spec_.junctions.size(); ++j)
    resolve_junction(static_cast<int>(j));
  time_ = 0.0;
}

void Simulation::move_fronts_to(double t) {
  double dt = t - time_;
  if (dt == 0.0) return;
  for (size_t r = 0; r < fronts_.size(); ++r) {
    const auto& road = spec_.roads[r];
    for (auto& f : fronts_[r])
      f.pos = std::clamp(f.pos + f.speed * dt, road.a, road.b);
  }
}

std::optional<Event> Simulation::next_event() const {
  std::optional<Event> best;
  auto consider = [&](const Event& ev) {
    if (!best) {
      best = ev;
      return;
    }
    if (ev.time < best->time - kTimeTol) {
      best = ev;
      return;
    }
    if (ev.time > best->time + kTimeTol) return;
    // Simultaneous: ScheduleJump, then JunctionArrival, then Collision;
    // among equals, the lowest road/junction index.
    auto rank = [](const Event& e) {
      return std::tuple(static_cast<int>(e.kind), e.road, e.junction,
                        e.front_index);
    };
    if (rank(ev) < rank(*best)) best = ev;
  };

  for (size_t j = 0; j < spec_.junctions.size(); ++j) {
    auto next = spec_.junctions[j].next_jump_after(time_);
    if (next)
      consider({*next, EventKind::ScheduleJump, -1, static_cast<int>(j), -1});
  }

  for (size_t r = 0; r < fronts_.size(); ++r) {
    const auto& road = spec_.roads[r];
    const auto& list = fronts_[r];
    for (size_t k = 0; k + 1 < list.size(); ++k) {
      double ds = list[k].speed - list[k + 1].speed;
      if (ds <= kSpeedFloor) continue;
      double gap = list[k + 1].pos - list[k].pos;
      double dt = gap <= kPosTol ? 0.0 : gap / ds;
      consider({time_ + dt, EventKind::Collision, static_cast<int>(r), -1,
                static_cast<int>(k)});
    }
    if (!list.empty() && list.back().speed > kSpeedFloor) {
      double gap = road.b - list.back().pos;
      double dt = gap <= kPosTol ? 0.0 : gap / list.back().speed;
      auto at = spec_.downstream_of(static_cast<int>(r));
      EventKind kind = at.junction >= 0 ? EventKind::JunctionArrival
                                        : EventKind::FreeEndExit;
      consider({time_ + dt, kind, static_cast<int>(r), at.junction,
                static_cast<int>(list.size()) - 1});
    }
    if (!list.empty() && list.front().speed < -kSpeedFloor) {
      double gap = list.front().pos - road.a;
      double dt = gap <= kPosTol ? 0.0 : gap / (-list.front().speed);
      auto at = spec_.upstream_of(static_cast<int>(r));
      EventKind kind = at.junction >= 0 ? EventKind::JunctionArrival
                                        : EventKind::FreeEndExit;
      consider({time_ + dt, kind, static_cast<int>(r), at.junction, 0});
    }
  }
  return best;
}

void Simulation::insert_fan(int road, double x, const WaveFan& fan,
                            double t) {
  if (fan.empty()) return;
  auto& list = fronts_[road];
  auto it = list.begin();
  while (it != list.end() && it->pos <= x) ++it;
  std::vector<Front> add;
  for (const auto& f : fan) {
    Front nf;
    nf.pos = x;
    nf.left = f.left;
    nf.right = f.right;
    nf.speed = f.speed;
    nf.birth = t;
    nf.generation = generation_counter_++;
    add.push_back(nf);
  }
  list.insert(it, add.begin(), add.end());
}

double Simulation::boundary_trace(int road, bool at_b) const {
  const auto& list = fronts_[road];
  if (list.empty()) return base_values_[road];
  return at_b ? list.back().right : list.front().left;
}

void Simulation::absorb_boundary_fronts(int road, bool at_b) {
  auto& list = fronts_[road];
  const auto& r = spec_.roads[road];
  if (at_b) {
    double lv = list.empty() ? base_values_[road] : list.front().left;
    while (!list.empty() && list.back().pos >= r.b - kPosTol) list.pop_back();
    if (list.empty()) base_values_[road] = lv;
  } else {
    while (!list.empty() && list.front().pos <= r.a + kPosTol) {
      base_values_[road] = list.front().right;
      list.erase(list.begin());
    }
  }
}

void Simulation::resolve_junction(int junction) {
  const auto& jn = spec_.junctions[junction];
  std::vector<double> in_traces, out_traces;
  std::vector<int> in_roads, out_roads;
  for (const auto& rid : jn.incoming) {
    int r = spec_.road_index(rid);
    absorb_boundary_fronts(r, true);
    in_roads.push_back(r);
    in_traces.push_back(boundary_trace(r, true));
  }
  for (const auto& rid : jn.outgoing) {
    int r = spec_.road_index(rid);
    absorb_boundary_fronts(r, false);
    out_roads.push_back(r);
    out_traces.push_back(boundary_trace(r, false));
  }
  DistributionMatrix eff = effective_matrix(jn.entry_at(time_));
  JunctionSolution sol = solve_junction_riemann(in_traces, out_traces, eff,
                                                flux_, spec_.tracking.delta);
  for (size_t i = 0; i < in_roads.size(); ++i) {
    WaveFan fan = sol.fans[i];
    for (auto& f : fan) {
      if (f.speed > 1e-9)
        throw engine_error("incoming-road junction fan with positive speed");
      f.speed = std::min(f.speed, 0.0);
    }
    insert_fan(in_roads[i], spec_.roads[in_roads[i]].b, fan, time_);
  }
  for (size_t j = 0; j < out_roads.size(); ++j) {
    WaveFan fan = sol.fans[in_roads.size() + j];
    for (auto& f : fan) {
      if (f.speed < -1e-9)
        throw engine_error("outgoing-road junction fan with negative speed");
      f.speed = std::max(f.speed, 0.0);
    }
    insert_fan(out_roads[j], spec_.roads[out_roads[j]].a, fan, time_);
  }
}

void Simulation::handle_collision(const Event& ev) {
  auto& list = fronts_[ev.road];
  size_t k = static_cast<size_t>(ev.front_index);
  if (k + 1 >= list.size())
    throw engine_error("collision event on missing front pair");
  double x = list[k + 1].pos;
  // Maximal contiguous run at this position with non-increasing speeds:
  // everything in it is compressive and merges into one Riemann problem.
  size_t lo = k, hi = k + 1;
  while (lo > 0 && std::abs(list[lo - 1].pos - x) <= kPosTol &&
         list[lo - 1].speed >= list[lo].speed - kSpeedFloor)
    --lo;
  while (hi + 1 < list.size() && std::abs(list[hi + 1].pos - x) <= kPosTol &&
         list[hi].speed >= list[hi + 1].speed - kSpeedFloor)
    ++hi;
  double left = list[lo].left;
  double right = list[hi].right;
  double lv = list.front().left;
  list.erase(list.begin() + lo, list.begin() + hi + 1);
  if (list.empty()) base_values_[ev.road] = lv;
  WaveFan fan = solve_road_riemann(left, right, flux_, spec_.tracking.delta);
  insert_fan(ev.road, x, fan, time_);
}

void Simulation::handle_free_end(const Event& ev) {
  auto& list = fronts_[ev.road];
  const auto& road = spec_.roads[ev.road];
  if (ev.front_index == 0 && list.front().speed < 0.0) {
    // exits through the a end
    base_values_[ev.road] = list.front().right;
    list.erase(list.begin());
  } else {
    double lv = list.front().left;
    list.pop_back();
    if (list.empty()) base_values_[ev.road] = lv;
  }
  (void)road;
}

bool Simulation::advance() {
  auto ev = next_event();
  if (!ev) return false;
  if (event_count_ >= event_limit_) {
    std::ostringstream msg;
    msg << "event limit " << event_limit_ << " reached at t=" << time_
        << "; last events:";
    size_t n = event_log_.size();
    for (size_t k = n > 10 ? n - 10 : 0; k < n; ++k)
      msg << " [" << event_log_[k].index << " "
          << to_string(event_log_[k].kind) << " t=" << event_log_[k].time
          << "]";
    throw runaway_error(msg.str());
  }
  move_fronts_to(ev->time);
  time_ = ev->time;
  switch (ev->kind) {
    case EventKind::Collision:
      handle_collision(*ev);
      break;
    case EventKind::JunctionArrival:
    case EventKind::ScheduleJump:
      resolve_junction(ev->junction);
      break;
    case EventKind::FreeEndExit:
      handle_free_end(*ev);
      break;
  }
  ++event_count_;
  log_event(*ev);
  if (check_consistency_) verify_consistency(*ev);
  return true;
}

void Simulation::run_until(double T, const Observer& observer) {
  if (T < time_ - kTimeTol)
    throw engine_error("run_until target precedes current time");
  if (observer) observer(*this, nullptr);
  while (true) {
    auto ev = next_event();
    if (!ev || ev->time > T + kTimeTol) break;
    advance();
    if (observer) observer(*this, &*ev);
  }
  move_fronts_to(T);
  time_ = T;
}

Snapshot Simulation::snapshot() const { return snapshot_at(time_); }

Snapshot Simulation::snapshot_at(double t) const {
  if (t < time_ - kTimeTol)
    throw engine_error("snapshot time precedes current time");
  if (t > time_ + kTimeTol) {
    auto ev = next_event();
    if (ev && t > ev->time + kTimeTol)
      throw engine_error("snapshot time lies beyond the next event");
  }
  double dt = t - time_;
  Snapshot snap;
  snap.time = t;
  for (size_t r = 0; r < fronts_.size(); ++r) {
    const auto& road = spec_.roads[r];
    RoadProfile prof;
    prof.a = road.a;
    prof.b = road.b;
    prof.xs.push_back(road.a);
    if (fronts_[r].empty()) {
      prof.values.push_back(base_values_[r]);
    } else {
      for (const auto& f : fronts_[r]) {
        prof.values.push_back(f.left);
        prof.xs.push_back(std::clamp(f.pos + f.speed * dt, road.a, road.b));
      }
      prof.values.push_back(fronts_[r].back().right);
    }
    prof.xs.push_back(road.b);
    snap.roads.push_back(std::move(prof));
  }
  return snap;
}

void Simulation::log_event(const Event& ev) {
  EventRecord rec;
  rec.index = event_count_;
  rec.time = ev.time;
  rec.kind = ev.kind;
  if (ev.road >= 0) rec.road_id = spec_.roads[ev.road].id;
  if (ev.junction >= 0) rec.junction_id = spec_.junctions[ev.junction].id;
  Snapshot snap = snapshot();
  rec.tv_flux_after = flux_total_variation(snap, flux_);
  rec.big_waves_after = big_wave_count(snap, spec_, flux_);
  event_log_.push_back(std::move(rec));
}

void Simulation::verify_consistency(const Event& ev) const {
  for (size_t r = 0; r < fronts_.size(); ++r) {
    const auto& list = fronts_[r];
    const auto& road = spec_.roads[r];
    for (size_t k = 0; k < list.size(); ++k) {
      const auto& f = list[k];
      std::ostringstream ctx;
      ctx << "after event " << event_count_ << " (" << to_string(ev.kind)
          << " t=" << time_ << ") road " << road.id << " front " << k;
      if (f.pos < road.a - kPosTol || f.pos > road.b + kPosTol)
        throw engine_error(ctx.str() + ": position outside road");
      if (k > 0 && list[k - 1].pos > f.pos + kPosTol)
        throw engine_error(ctx.str() + ": position ordering violated");
      if (k > 0 && std::abs(list[k - 1].right - f.left) > 1e-9)
        throw engine_error(ctx.str() + ": value chain broken");
      if (std::abs(f.left - f.right) <= 1e-13)
        throw engine_error(ctx.str() + ": null front");
      double rh = rankine_hugoniot_speed(flux_, f.left, f.right);
      if (std::abs(std::clamp(rh, -1e9, 1e9) - f.speed) > 1e-9 &&
          std::abs(rh - f.speed) > 1e-9)
        throw engine_error(ctx.str() + ": speed is not Rankine-Hugoniot");
    }
  }
}

}  // namespace lwr
