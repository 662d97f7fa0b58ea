#include "lwr/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lwr {

double total_variation(const Snapshot& s) {
  double tv = 0.0;
  for (const auto& r : s.roads)
    for (size_t k = 0; k + 1 < r.values.size(); ++k)
      tv += std::abs(r.values[k + 1] - r.values[k]);
  return tv;
}

double flux_total_variation(const Snapshot& s, const FluxModel& m) {
  double tv = 0.0;
  for (const auto& r : s.roads)
    for (size_t k = 0; k + 1 < r.values.size(); ++k)
      tv += std::abs(m.eval(r.values[k + 1]) - m.eval(r.values[k]));
  return tv;
}

double total_mass(const Snapshot& s) {
  double mass = 0.0;
  for (const auto& r : s.roads)
    for (size_t k = 0; k < r.values.size(); ++k)
      mass += r.values[k] * (r.xs[k + 1] - r.xs[k]);
  return mass;
}

namespace {

int sgn(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace

std::vector<int> bad_trace_counts(const Snapshot& s, const NetworkSpec& spec,
                                  const FluxModel& m) {
  std::vector<int> phi(spec.junctions.size(), 0);
  double sigma = m.sigma();
  for (size_t j = 0; j < spec.junctions.size(); ++j) {
    const auto& jn = spec.junctions[j];
    for (const auto& rid : jn.incoming) {
      double trace = s.roads[spec.road_index(rid)].trace_at_b();
      if (trace <= sigma) ++phi[j];
    }
    for (const auto& rid : jn.outgoing) {
      double trace = s.roads[spec.road_index(rid)].trace_at_a();
      if (trace >= sigma) ++phi[j];
    }
  }
  return phi;
}

int big_wave_count(const Snapshot& s, const NetworkSpec& spec,
                   const FluxModel& m) {
  int count = 0;
  for (int phi : bad_trace_counts(s, spec, m)) count += phi;
  double sigma = m.sigma();
  for (const auto& r : s.roads)
    for (size_t k = 0; k + 1 < r.values.size(); ++k)
      if (sgn(r.values[k] - sigma) * sgn(r.values[k + 1] - sigma) <= 0)
        ++count;
  return count;
}

double l1_distance(const Snapshot& s1, const Snapshot& s2) {
  if (s1.roads.size() != s2.roads.size())
    throw std::invalid_argument("snapshots belong to different networks");
  double dist = 0.0;
  for (size_t r = 0; r < s1.roads.size(); ++r) {
    const auto& p = s1.roads[r];
    const auto& q = s2.roads[r];
    if (p.a != q.a || p.b != q.b)
      throw std::invalid_argument("snapshots belong to different networks");
    // Merge the two breakpoint sets and integrate cell by cell.
    std::vector<double> xs;
    xs.insert(xs.end(), p.xs.begin(), p.xs.end());
    xs.insert(xs.end(), q.xs.begin(), q.xs.end());
    std::sort(xs.begin(), xs.end());
    auto value_at = [](const RoadProfile& prof, double x) {
      size_t k = 0;
      while (k + 1 < prof.values.size() && prof.xs[k + 1] <= x) ++k;
      return prof.values[k];
    };
    for (size_t c = 0; c + 1 < xs.size(); ++c) {
      double w = xs[c + 1] - xs[c];
      if (w <= 0.0) continue;
      double mid = 0.5 * (xs[c] + xs[c + 1]);
      dist += std::abs(value_at(p, mid) - value_at(q, mid)) * w;
    }
  }
  return dist;
}

FunctionalSample sample_functionals(const Snapshot& s, const NetworkSpec& spec,
                                    const FluxModel& m, long event_index) {
  FunctionalSample out;
  out.time = s.time;
  out.event_index = event_index;
  out.tv_density = total_variation(s);
  out.tv_flux = flux_total_variation(s, m);
  out.phi_per_junction = bad_trace_counts(s, spec, m);
  out.big_waves = big_wave_count(s, spec, m);
  out.mass = total_mass(s);
  return out;
}

}  // namespace lwr
