#pragma once

#include <cmath>

#include "lwr/functionals.hpp"
#include "lwr/tracking.hpp"

// The two junction interaction classes where the monotone functionals can
// legitimately jump up:
//  - a junction solve that lands a boundary trace exactly on sigma makes the
//    road enter Phi_J while the sigma-ending rarefaction shock counts in G
//    (closed intervals and the sgn(0) = 0 convention), so N gains 2;
//  - a wave arriving from an outgoing road removes flux variation weighted by
//    its matrix column (< 1) while the forced response on the other roads
//    carries weight 2 minus that column, so Tv(f) grows.
// Everything outside these classes must stay monotone.
namespace testutil {

inline bool sigma_trace_at(const lwr::Snapshot& s, const lwr::NetworkSpec& spec,
                           const lwr::FluxModel& m, int junction) {
  if (junction < 0) return false;
  const auto& jn = spec.junctions[junction];
  auto road_index = [&](const std::string& id) {
    for (size_t r = 0; r < spec.roads.size(); ++r)
      if (spec.roads[r].id == id) return static_cast<int>(r);
    return -1;
  };
  for (const auto& id : jn.incoming)
    if (std::abs(s.roads[road_index(id)].trace_at_b() - m.sigma()) < 1e-12)
      return true;
  for (const auto& id : jn.outgoing)
    if (std::abs(s.roads[road_index(id)].trace_at_a() - m.sigma()) < 1e-12)
      return true;
  return false;
}

inline bool outgoing_arrival(const lwr::NetworkSpec& spec,
                             const lwr::Event& ev) {
  if (ev.kind != lwr::EventKind::JunctionArrival || ev.junction < 0)
    return false;
  const auto& jn = spec.junctions[ev.junction];
  for (const auto& id : jn.outgoing)
    if (id == spec.roads[ev.road].id) return true;
  return false;
}

}  // namespace testutil
