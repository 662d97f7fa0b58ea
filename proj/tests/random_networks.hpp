#pragma once

#include <random>
#include <string>
#include <vector>

#include "lwr/network.hpp"

// Random road networks: a chain of 1..4 junctions, each at most 2x2, with
// fresh side roads for the extra slots and random piecewise-constant data.
namespace testutil {

inline lwr::DistributionMatrix random_matrix(std::mt19937& rng, int m,
                                             int n) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  lwr::DistributionMatrix A;
  A.m = m;
  A.n = n;
  A.entries.assign(static_cast<size_t>(m) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    double col = 0.0;
    std::vector<double> raw(m);
    for (int j = 0; j < m; ++j) {
      raw[j] = u(rng);
      col += raw[j];
    }
    for (int j = 0; j < m; ++j) A.at(j, i) = raw[j] / col;
  }
  return A;
}

inline void random_initial(std::mt19937& rng, lwr::RoadSpec& road,
                           int max_breaks) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int breaks = static_cast<int>(u(rng) * (max_breaks + 1));
  std::vector<double> xs;
  for (int k = 0; k < breaks; ++k)
    xs.push_back(road.a + (road.b - road.a) * (0.05 + 0.9 * u(rng)));
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  road.breaks = xs;
  road.values.clear();
  for (size_t k = 0; k <= road.breaks.size(); ++k)
    road.values.push_back(u(rng));
}

struct GeneratorOptions {
  int max_junctions = 4;
  int max_breaks = 10;
  double delta = 0.02;
  double horizon = 2.0;
  bool with_schedules = false;
  std::string flux_family = "smooth";
  double nu = 0.05;
};

inline lwr::NetworkSpec random_network(std::mt19937& rng,
                                       const GeneratorOptions& opt) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  lwr::NetworkSpec spec;
  spec.flux.family = opt.flux_family;
  spec.flux.fmax = 1.0;
  spec.flux.nu = opt.nu;
  spec.tracking.delta = opt.delta;
  spec.tracking.horizon = opt.horizon;

  int junctions = 1 + static_cast<int>(u(rng) * opt.max_junctions);
  junctions = std::min(junctions, opt.max_junctions);
  int road_counter = 0;
  auto new_road = [&] {
    lwr::RoadSpec r;
    r.id = "r" + std::to_string(road_counter++);
    r.a = 0.0;
    r.b = 1.0;
    random_initial(rng, r, opt.max_breaks);
    spec.roads.push_back(r);
    return r.id;
  };

  std::string trunk = new_road();
  for (int k = 0; k < junctions; ++k) {
    int n = u(rng) < 0.5 ? 1 : 2;
    int m = u(rng) < 0.5 ? 1 : 2;
    lwr::JunctionSpec jn;
    jn.id = "J" + std::to_string(k);
    jn.incoming.push_back(trunk);
    if (n == 2) jn.incoming.push_back(new_road());
    trunk = new_road();
    jn.outgoing.push_back(trunk);
    if (m == 2) jn.outgoing.push_back(new_road());

    lwr::ScheduleEntry e0;
    e0.t = 0.0;
    e0.matrix = random_matrix(rng, m, n);
    jn.schedule.push_back(e0);
    if (opt.with_schedules && u(rng) < 0.7) {
      lwr::ScheduleEntry e1;
      e1.t = 0.2 + 0.6 * u(rng) * opt.horizon;
      e1.matrix = random_matrix(rng, m, n);
      jn.schedule.push_back(e1);
    }
    spec.junctions.push_back(jn);
  }
  spec.validate();
  return spec;
}

}  // namespace testutil
