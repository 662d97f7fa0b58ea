#include <cmath>

#include "doctest.h"
#include "lwr/functionals.hpp"
#include "lwr/scenario.hpp"
#include "lwr/tracking.hpp"

using namespace lwr;

namespace {

RoadProfile profile(double a, double b, std::vector<double> xs,
                    std::vector<double> values) {
  RoadProfile p;
  p.a = a;
  p.b = b;
  p.xs = std::move(xs);
  p.values = std::move(values);
  return p;
}

}  // namespace

TEST_CASE("variation and mass of simple profiles") {
  FluxModel m = FluxModel::smooth(1.0);
  Snapshot s;
  s.roads.push_back(profile(0, 1, {0, 1}, {0.4}));
  CHECK(total_variation(s) == 0.0);
  CHECK(flux_total_variation(s, m) == 0.0);
  CHECK(total_mass(s) == doctest::Approx(0.4));

  Snapshot shock;
  shock.roads.push_back(profile(0, 1, {0, 0.5, 1}, {0.2, 0.8}));
  CHECK(total_variation(shock) == doctest::Approx(0.6));
  CHECK(flux_total_variation(shock, m) ==
        doctest::Approx(0.0).epsilon(1e-14));
  CHECK(total_mass(shock) == doctest::Approx(0.5));
}

TEST_CASE("big wave counter") {
  FluxModel m = FluxModel::smooth(1.0);
  SUBCASE("single road front straddling sigma") {
    NetworkSpec spec;
    spec.roads.push_back({"r", 0.0, 1.0, {0.5}, {0.3, 0.7}});
    Snapshot s;
    s.roads.push_back(profile(0, 1, {0, 0.5, 1}, {0.3, 0.7}));
    CHECK(big_wave_count(s, spec, m) == 1);
  }
  SUBCASE("all-sigma 2x2 junction counts every trace") {
    ScenarioParams p;
    p.kind = ScenarioKind::TrafficLightSwap;
    NetworkSpec spec = build_scenario(p);
    Snapshot s;
    for (size_t r = 0; r < spec.roads.size(); ++r)
      s.roads.push_back(profile(0, 1, {0, 1}, {0.5}));
    CHECK(bad_trace_counts(s, spec, m) == std::vector<int>{4});
    CHECK(big_wave_count(s, spec, m) == 4);
  }
  SUBCASE("sgn(0) = 0 on a one-sided front") {
    NetworkSpec spec;
    spec.roads.push_back({"r", 0.0, 1.0, {0.5}, {0.3, 0.5}});
    Snapshot s;
    s.roads.push_back(profile(0, 1, {0, 0.5, 1}, {0.3, 0.5}));
    CHECK(big_wave_count(s, spec, m) == 1);
  }
}

TEST_CASE("l1 distance") {
  Snapshot a, b;
  a.roads.push_back(profile(0, 1, {0, 0.5, 1}, {0.2, 0.8}));
  b.roads.push_back(profile(0, 1, {0, 0.5, 1}, {0.2, 0.8}));
  CHECK(l1_distance(a, b) == 0.0);

  // shifting the front by xi changes the distance by |xi| * jump
  Snapshot c;
  c.roads.push_back(profile(0, 1, {0, 0.625, 1}, {0.2, 0.8}));
  CHECK(l1_distance(a, c) == doctest::Approx(0.125 * 0.6));

  Snapshot d, e;
  d.roads.push_back(profile(0, 2, {0, 2}, {0.9}));
  e.roads.push_back(profile(0, 2, {0, 2}, {0.4}));
  CHECK(l1_distance(d, e) == doctest::Approx(2 * 0.5));

  Snapshot wrong;
  wrong.roads.push_back(profile(0, 3, {0, 3}, {0.9}));
  CHECK_THROWS_AS(l1_distance(d, wrong), std::invalid_argument);
}

TEST_CASE("appendix scenario functionals at t=0") {
  ScenarioParams p;
  p.kind = ScenarioKind::AppendixA;
  p.rho1_flux = 0.5;
  Simulation sim(build_scenario(p));
  sim.initialize();
  Snapshot s = sim.snapshot();
  // one flux jump of size 1 - f(rho1) on road 1
  CHECK(flux_total_variation(s, sim.flux()) ==
        doctest::Approx(0.5).epsilon(1e-12));
  auto sample = sample_functionals(s, sim.spec(), sim.flux(), 0);
  CHECK(sample.tv_flux == doctest::Approx(0.5));
  CHECK(sample.big_waves == 6);
  CHECK(sample.phi_per_junction == std::vector<int>{5});
}

TEST_CASE("density variation controlled by flux variation") {
  // tv_density <= tv_flux / c_lo + N for the kinked family
  FluxModel k = FluxModel::kinked(FluxModel::smooth(1.0), 0.2);
  NetworkSpec spec;
  spec.roads.push_back({"r", 0.0, 1.0, {0.2, 0.4, 0.6}, {0.1, 0.7, 0.3, 0.9}});
  Snapshot s;
  s.roads.push_back(
      profile(0, 1, {0, 0.2, 0.4, 0.6, 1}, {0.1, 0.7, 0.3, 0.9}));
  double n = big_wave_count(s, spec, k);
  CHECK(total_variation(s) <=
        flux_total_variation(s, k) / k.c_lo() + n + 1e-12);
}
