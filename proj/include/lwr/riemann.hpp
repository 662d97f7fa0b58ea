#pragma once

#include <vector>

#include "lwr/flux.hpp"
#include "lwr/network.hpp"

namespace lwr {

/// One discontinuity of a Riemann fan: left/right densities and the
/// Rankine-Hugoniot speed of the jump.
struct FanFront {
  double left = 0.0;
  double right = 0.0;
  double speed = 0.0;
};

/// Ordered fronts emitted by one Riemann solve, speeds non-decreasing.
/// Rarefactions are discretized into rarefaction shocks of width <= delta
/// with sigma inserted whenever it lies inside the fan.
using WaveFan = std::vector<FanFront>;

double rankine_hugoniot_speed(const FluxModel& m, double rho_l, double rho_r);

WaveFan solve_road_riemann(double rho_l, double rho_r, const FluxModel& m,
                           double delta);

/// The polytope Omega of admissible through-fluxes at a junction:
/// gamma in prod [0, d_i] with (A gamma)_j <= s_j.
struct FeasibleRegion {
  std::vector<double> demand_bounds;  // d_i, one per incoming road
  std::vector<double> supply_bounds;  // s_j, one per outgoing road
  DistributionMatrix effective;       // alpha_ji * chi_i

  int n() const { return static_cast<int>(demand_bounds.size()); }
  int m() const { return static_cast<int>(supply_bounds.size()); }
  bool contains(const std::vector<double>& gamma, double tol) const;
};

FeasibleRegion build_feasible_region(const std::vector<double>& in_traces,
                                     const std::vector<double>& out_traces,
                                     const DistributionMatrix& effective,
                                     const FluxModel& m);

/// Maximizes E(gamma) = sum_i gamma_i over the region by exhaustive vertex
/// enumeration. Degenerate maximizers are resolved lexicographically
/// (largest gamma_1, then gamma_2, ...).
std::vector<double> maximize_through_flux(const FeasibleRegion& region);

struct JunctionSolution {
  std::vector<double> gamma_in;    // gamma_hat per incoming road
  std::vector<double> gamma_out;   // A gamma_hat per outgoing road
  std::vector<double> rho_hat;     // incoming then outgoing boundary states
  std::vector<WaveFan> fans;       // per road, same order as rho_hat
};

JunctionSolution solve_junction_riemann(const std::vector<double>& in_traces,
                                        const std::vector<double>& out_traces,
                                        const DistributionMatrix& effective,
                                        const FluxModel& m, double delta);

/// Effective matrix at a junction given its schedule entry: alpha_ji * chi_i.
DistributionMatrix effective_matrix(const ScheduleEntry& entry);

}  // namespace lwr
