#pragma once

#include <string>

#include "lwr/network.hpp"

namespace lwr {

enum class ScenarioKind { AppendixA, AppendixB, TrafficLightSwap };

/// Built-in single-junction scenarios.
///
///   appendix_a:  3-in/3-out junction at an equilibrium whose through-flux
///                variation grows when a wave of flux level rho1_flux
///                arrives on road 1.  The flux is pinned to fmax = 1.
///   appendix_b:  2-in/2-out junction at equilibrium; an arbitrarily small
///                wave on road 1 triggers a road-3 wave of fixed strength.
///   traffic_light_swap:  2-in/2-out junction whose distribution matrix
///                swaps its columns (beta1 <-> beta2) at time tbar.
struct ScenarioParams {
  ScenarioKind kind = ScenarioKind::AppendixA;
  double rho1_flux = 0.5;  // flux level of the incoming wave (appendix_a/b)
  double alpha1 = 0.25;    // appendix_b turning fractions
  double alpha2 = 0.4;
  double beta1 = 0.4;      // traffic_light_swap phases
  double beta2 = 0.3;
  double tbar = 0.25;      // schedule swap time
  double fmax = 1.0;       // ignored by appendix_a (pinned to 1)
  double delta = 0.05;
  double horizon = 1.0;
  bool with_wave = true;   // drop the road-1 wave to get a pure equilibrium
};

/// Parses one of "appendix_a", "appendix_b", "traffic_light_swap".
ScenarioKind parse_scenario_kind(const std::string& name);

/// Builds the network for the given scenario. Throws config_error when a
/// parameter is out of range.
NetworkSpec build_scenario(const ScenarioParams& p);

}  // namespace lwr
