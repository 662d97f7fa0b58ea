#include "lwr/scenario.hpp"

#include <cmath>

#include "lwr/flux.hpp"

namespace lwr {

ScenarioKind parse_scenario_kind(const std::string& name) {
  if (name == "appendix_a") return ScenarioKind::AppendixA;
  if (name == "appendix_b") return ScenarioKind::AppendixB;
  if (name == "traffic_light_swap") return ScenarioKind::TrafficLightSwap;
  throw config_error("unknown scenario '" + name + "'");
}

namespace {

RoadSpec uniform_road(const std::string& id, double value) {
  RoadSpec r;
  r.id = id;
  r.a = 0.0;
  r.b = 1.0;
  r.values = {value};
  return r;
}

DistributionMatrix matrix2x2(double a1, double a2) {
  DistributionMatrix A;
  A.m = 2;
  A.n = 2;
  A.entries = {a1, a2, 1.0 - a1, 1.0 - a2};
  return A;
}

void check(bool ok, const std::string& msg) {
  if (!ok) throw config_error(msg);
}

// Places the incoming jump so that it reaches b = 1 at half the horizon
// (the wave slows down as rho1 approaches sigma, so a fixed position would
// miss the junction for near-maximal flux levels).
void add_incoming_wave(RoadSpec& r, const FluxModel& f, double rho1_flux,
                       double horizon) {
  double rho1 = f.invert(rho1_flux, Branch::Ascending);
  double sigma = f.sigma();
  double speed = (f.eval(sigma) - rho1_flux) / (sigma - rho1);
  double x1 = std::max(r.a + 1e-6,
                       r.b - std::min(0.5 * (r.b - r.a),
                                      0.5 * speed * horizon));
  r.breaks = {x1};
  r.values = {rho1, sigma};
}

NetworkSpec build_appendix_a(const ScenarioParams& p) {
  check(p.fmax == 1.0, "appendix_a pins fmax = 1 and rejects overrides");
  check(p.rho1_flux > 0.0 && p.rho1_flux < 1.0,
        "rho1_flux must lie in (0, 1)");
  NetworkSpec spec;
  spec.flux.family = "smooth";
  spec.flux.fmax = 1.0;  // the construction normalizes f(sigma) = 1
  spec.tracking.delta = p.delta;
  spec.tracking.horizon = p.horizon;
  FluxModel f = spec.flux.build();
  double sigma = f.sigma();
  double third_high = f.invert(1.0 / 3.0, Branch::Descending);

  RoadSpec r1 = uniform_road("1", sigma);
  if (p.with_wave) add_incoming_wave(r1, f, p.rho1_flux, p.horizon);
  spec.roads.push_back(r1);
  spec.roads.push_back(uniform_road("2", third_high));
  spec.roads.push_back(uniform_road("3", sigma));
  spec.roads.push_back(uniform_road("4", sigma));
  spec.roads.push_back(uniform_road("5", sigma));
  spec.roads.push_back(uniform_road("6", third_high));

  JunctionSpec jn;
  jn.id = "J";
  jn.incoming = {"1", "2", "3"};
  jn.outgoing = {"4", "5", "6"};
  ScheduleEntry e;
  e.t = 0.0;
  e.matrix.m = 3;
  e.matrix.n = 3;
  e.matrix.entries = {1.0 / 2, 1.0 / 2, 1.0 / 3,
                      1.0 / 3, 1.0 / 2, 1.0 / 2,
                      1.0 / 6, 0.0,     1.0 / 6};
  jn.schedule.push_back(e);
  spec.junctions.push_back(jn);
  return spec;
}

NetworkSpec build_appendix_b(const ScenarioParams& p) {
  check(p.alpha1 > 0.0 && p.alpha1 < p.alpha2 && p.alpha2 < 0.5,
        "alpha parameters must satisfy 0 < alpha1 < alpha2 < 1/2");
  check(p.fmax > 0.0, "fmax must be positive");
  check(p.rho1_flux > 0.0 && p.rho1_flux < p.fmax,
        "rho1_flux must lie in (0, fmax)");
  NetworkSpec spec;
  spec.flux.family = "smooth";
  spec.flux.fmax = p.fmax;
  spec.tracking.delta = p.delta;
  spec.tracking.horizon = p.horizon;
  FluxModel f = spec.flux.build();
  double sigma = f.sigma();
  double eq_flux = p.alpha1 / (1.0 - p.alpha2) * p.fmax;

  RoadSpec r1 = uniform_road("1", sigma);
  if (p.with_wave) add_incoming_wave(r1, f, p.rho1_flux, p.horizon);
  spec.roads.push_back(r1);
  // Road 2 sits on the ascending branch so its demand, not just its flux,
  // equals eq_flux; with the congested state instead, the maximizer reroutes
  // nothing and road 3 stays untouched.
  spec.roads.push_back(
      uniform_road("2", f.invert(eq_flux, Branch::Ascending)));
  spec.roads.push_back(
      uniform_road("3", f.invert(eq_flux, Branch::Descending)));
  spec.roads.push_back(uniform_road("4", sigma));

  JunctionSpec jn;
  jn.id = "J";
  jn.incoming = {"1", "2"};
  jn.outgoing = {"3", "4"};
  ScheduleEntry e;
  e.t = 0.0;
  e.matrix = matrix2x2(p.alpha1, p.alpha2);
  jn.schedule.push_back(e);
  spec.junctions.push_back(jn);
  return spec;
}

NetworkSpec build_traffic_light_swap(const ScenarioParams& p) {
  check(p.beta2 > 0.0 && p.beta2 <= p.beta1 && p.beta1 < 0.5,
        "beta parameters must satisfy 0 < beta2 <= beta1 < 1/2");
  check(p.fmax > 0.0, "fmax must be positive");
  check(p.tbar > 0.0 && p.tbar < p.horizon,
        "tbar must lie strictly between 0 and the horizon");
  NetworkSpec spec;
  spec.flux.family = "smooth";
  spec.flux.fmax = p.fmax;
  spec.tracking.delta = p.delta;
  spec.tracking.horizon = p.horizon;
  FluxModel f = spec.flux.build();
  double sigma = f.sigma();
  double eq_flux = p.beta1 / (1.0 - p.beta2) * p.fmax;
  double congested = f.invert(eq_flux, Branch::Descending);

  spec.roads.push_back(uniform_road("1", sigma));
  spec.roads.push_back(uniform_road("2", congested));
  spec.roads.push_back(uniform_road("3", congested));
  spec.roads.push_back(uniform_road("4", sigma));

  JunctionSpec jn;
  jn.id = "J";
  jn.incoming = {"1", "2"};
  jn.outgoing = {"3", "4"};
  ScheduleEntry e0;
  e0.t = 0.0;
  e0.matrix = matrix2x2(p.beta1, p.beta2);
  jn.schedule.push_back(e0);
  if (p.beta1 != p.beta2) {
    ScheduleEntry e1;
    e1.t = p.tbar;
    e1.matrix = matrix2x2(p.beta2, p.beta1);
    jn.schedule.push_back(e1);
  }
  spec.junctions.push_back(jn);
  return spec;
}

}  // namespace

NetworkSpec build_scenario(const ScenarioParams& p) {
  NetworkSpec spec;
  switch (p.kind) {
    case ScenarioKind::AppendixA:
      spec = build_appendix_a(p);
      break;
    case ScenarioKind::AppendixB:
      spec = build_appendix_b(p);
      break;
    case ScenarioKind::TrafficLightSwap:
      spec = build_traffic_light_swap(p);
      break;
  }
  spec.validate();
  return spec;
}

}  // namespace lwr
