#include <cmath>
#include <random>

#include "doctest.h"
#include "lwr/riemann.hpp"

using namespace lwr;

namespace {

void check_fan_invariants(const WaveFan& fan, const FluxModel& m,
                          double delta) {
  for (size_t k = 0; k < fan.size(); ++k) {
    const auto& f = fan[k];
    CHECK(f.left != f.right);
    CHECK(std::abs(f.speed - rankine_hugoniot_speed(m, f.left, f.right)) <
          1e-12);
    if (k > 0) {
      CHECK(fan[k - 1].right == f.left);
      CHECK(fan[k - 1].speed < f.speed);
    }
    if (f.left > f.right) {
      CHECK(f.left - f.right <= delta + 1e-12);
      // sigma never sits strictly inside a rarefaction shock
      bool crosses = f.right < m.sigma() && m.sigma() < f.left;
      CHECK(!crosses);
    }
  }
}

DistributionMatrix make_matrix(int m, int n, const std::vector<double>& e) {
  DistributionMatrix A;
  A.m = m;
  A.n = n;
  A.entries = e;
  return A;
}

}  // namespace

TEST_CASE("road riemann: shock") {
  FluxModel m = FluxModel::smooth(1.0);
  WaveFan fan = solve_road_riemann(0.2, 0.8, m, 0.05);
  REQUIRE(fan.size() == 1);
  CHECK(fan[0].left == 0.2);
  CHECK(fan[0].right == 0.8);
  CHECK(fan[0].speed == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("road riemann: trivial") {
  FluxModel m = FluxModel::smooth(1.0);
  CHECK(solve_road_riemann(0.4, 0.4, m, 0.05).empty());
}

TEST_CASE("road riemann: rarefaction with sigma insertion") {
  FluxModel m = FluxModel::smooth(1.0);
  WaveFan fan = solve_road_riemann(0.8, 0.2, m, 0.2);
  std::vector<double> values{fan[0].left};
  for (const auto& f : fan) values.push_back(f.right);
  std::vector<double> expect{0.8, 0.6, 0.5, 0.4, 0.2};
  REQUIRE(values.size() == expect.size());
  for (size_t k = 0; k < expect.size(); ++k)
    CHECK(values[k] == doctest::Approx(expect[k]).epsilon(1e-14));
  check_fan_invariants(fan, m, 0.2);
}

TEST_CASE("road riemann: randomized invariants") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  FluxModel smooth = FluxModel::smooth(1.0);
  FluxModel kinked = FluxModel::kinked(FluxModel::smooth(1.0), 0.05);
  for (int it = 0; it < 500; ++it) {
    const FluxModel& m = it % 2 ? kinked : smooth;
    double delta = 0.01 + 0.2 * u(rng);
    WaveFan fan = solve_road_riemann(u(rng), u(rng), m, delta);
    check_fan_invariants(fan, m, delta);
  }
}

TEST_CASE("feasible region bounds") {
  FluxModel m = FluxModel::smooth(1.0);
  SUBCASE("all sigma") {
    auto region = build_feasible_region({0.5, 0.5}, {0.5, 0.5},
                                        make_matrix(2, 2, {0.5, 0.5, 0.5, 0.5}),
                                        m);
    CHECK(region.demand_bounds == std::vector<double>{1.0, 1.0});
    CHECK(region.supply_bounds == std::vector<double>{1.0, 1.0});
  }
  SUBCASE("equilibrium bounds") {
    double a1 = 0.25, a2 = 0.4;
    double eq = a1 / (1.0 - a2);
    double rho2 = m.invert(eq, Branch::Ascending);
    double rho3 = m.invert(eq, Branch::Descending);
    auto region = build_feasible_region(
        {0.5, rho2}, {rho3, 0.5},
        make_matrix(2, 2, {a1, a2, 1.0 - a1, 1.0 - a2}), m);
    CHECK(region.demand_bounds[0] == 1.0);
    CHECK(region.demand_bounds[1] == doctest::Approx(eq).epsilon(1e-12));
    CHECK(region.supply_bounds[0] == doctest::Approx(eq).epsilon(1e-12));
    CHECK(region.supply_bounds[1] == 1.0);
  }
  SUBCASE("zero demand") {
    auto region = build_feasible_region({0.0, 0.0}, {0.5, 0.5},
                                        make_matrix(2, 2, {0.5, 0.5, 0.5, 0.5}),
                                        m);
    CHECK(region.demand_bounds == std::vector<double>{0.0, 0.0});
    auto gamma = maximize_through_flux(region);
    CHECK(gamma == std::vector<double>{0.0, 0.0});
  }
}

TEST_CASE("red light blocks a column") {
  ScheduleEntry entry;
  entry.matrix = make_matrix(2, 2, {0.3, 0.6, 0.7, 0.4});
  entry.lights = {1, 0};
  DistributionMatrix eff = effective_matrix(entry);
  CHECK(eff.at(0, 1) == 0.0);
  CHECK(eff.at(1, 1) == 0.0);
  CHECK(eff.at(0, 0) == 0.3);
  FluxModel m = FluxModel::smooth(1.0);
  auto region = build_feasible_region({0.5, 0.5}, {0.5, 0.5}, eff, m);
  CHECK(region.demand_bounds[1] == 0.0);
}

TEST_CASE("through-flux maximization") {
  FluxModel m = FluxModel::smooth(1.0);
  SUBCASE("unconstrained box") {
    auto region = build_feasible_region(
        {0.5, 0.5}, {0.5, 0.5}, make_matrix(2, 2, {0.3, 0.7, 0.7, 0.3}), m);
    auto gamma = maximize_through_flux(region);
    CHECK(gamma[0] == doctest::Approx(1.0));
    CHECK(gamma[1] == doctest::Approx(1.0));
  }
  SUBCASE("3x3 after incoming wave") {
    // demands (1/2, 1, 1), supplies (1, 1, 1/3); the through-flux optimum is
    // degenerate along the second supply plane and the lexicographic rule
    // picks gamma_2 = 1
    auto region = build_feasible_region(
        {m.invert(0.5, Branch::Ascending), m.invert(1.0, Branch::Descending),
         0.5},
        {0.5, 0.5, m.invert(1.0 / 3, Branch::Descending)},
        make_matrix(3, 3,
                    {0.5, 0.5, 1.0 / 3, 1.0 / 3, 0.5, 0.5, 1.0 / 6, 0.0,
                     1.0 / 6}),
        m);
    CHECK(region.demand_bounds[0] == doctest::Approx(0.5));
    auto gamma = maximize_through_flux(region);
    CHECK(gamma[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(gamma[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(gamma[2] == doctest::Approx(2.0 / 3).epsilon(1e-12));
  }
}

TEST_CASE("junction riemann: equilibrium is a fixed point") {
  FluxModel m = FluxModel::smooth(1.0);
  double a1 = 0.25, a2 = 0.4;
  double eq = a1 / (1.0 - a2);
  std::vector<double> in{0.5, m.invert(eq, Branch::Ascending)};
  std::vector<double> out{m.invert(eq, Branch::Descending), 0.5};
  auto A = make_matrix(2, 2, {a1, a2, 1.0 - a1, 1.0 - a2});
  auto sol = solve_junction_riemann(in, out, A, m, 0.05);
  CHECK(sol.rho_hat[0] == in[0]);
  CHECK(sol.rho_hat[1] == in[1]);
  CHECK(sol.rho_hat[2] == out[0]);
  CHECK(sol.rho_hat[3] == out[1]);
  for (const auto& fan : sol.fans) CHECK(fan.empty());
}

TEST_CASE("junction riemann: big wave on road 3") {
  FluxModel m = FluxModel::smooth(1.0);
  double a1 = 0.25, a2 = 0.4;
  double eq = a1 / (1.0 - a2);
  double rho1 = m.invert(0.99, Branch::Ascending);
  std::vector<double> in{rho1, m.invert(eq, Branch::Ascending)};
  double rho30 = m.invert(eq, Branch::Descending);
  std::vector<double> out{rho30, 0.5};
  auto A = make_matrix(2, 2, {a1, a2, 1.0 - a1, 1.0 - a2});
  auto sol = solve_junction_riemann(in, out, A, m, 0.05);
  // gamma_1 sticks at its demand, road 2 keeps its full share, road 3
  // drops onto the ascending branch
  CHECK(sol.gamma_in[0] == doctest::Approx(0.99).epsilon(1e-12));
  CHECK(sol.gamma_in[1] == doctest::Approx(eq).epsilon(1e-12));
  CHECK(sol.rho_hat[0] == rho1);
  CHECK(sol.rho_hat[1] == in[1]);
  double g3 = a1 * 0.99 + a2 * eq;
  CHECK(sol.gamma_out[0] == doctest::Approx(g3).epsilon(1e-12));
  CHECK(sol.rho_hat[2] ==
        doctest::Approx(m.invert(g3, Branch::Ascending)).epsilon(1e-12));
  CHECK(std::abs(sol.rho_hat[2] - rho30) >
        0.9 * std::abs(m.tau(rho30) - rho30));
  CHECK(sol.rho_hat[3] ==
        doctest::Approx(m.invert(0.75 * 0.99 + 0.6 * eq, Branch::Ascending)));
}

TEST_CASE("junction riemann: invariants on random instances") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  FluxModel m = FluxModel::smooth(1.0);
  for (int it = 0; it < 300; ++it) {
    int n = 1 + static_cast<int>(u(rng) * 3.0);
    int mm = 1 + static_cast<int>(u(rng) * 3.0);
    n = std::min(n, 3);
    mm = std::min(mm, 3);
    std::vector<double> entries(static_cast<size_t>(n) * mm);
    for (int i = 0; i < n; ++i) {
      double col = 0.0;
      std::vector<double> raw(mm);
      for (int j = 0; j < mm; ++j) {
        raw[j] = 0.05 + u(rng);
        col += raw[j];
      }
      for (int j = 0; j < mm; ++j) entries[j * n + i] = raw[j] / col;
    }
    auto A = make_matrix(mm, n, entries);
    std::vector<double> in(n), out(mm);
    for (auto& v : in) v = u(rng);
    for (auto& v : out) v = u(rng);
    auto sol = solve_junction_riemann(in, out, A, m, 0.05);

    // Rankine-Hugoniot balance and rule (A)
    double ein = 0.0, eout = 0.0;
    for (int i = 0; i < n; ++i) ein += m.eval(sol.rho_hat[i]);
    for (int j = 0; j < mm; ++j) eout += m.eval(sol.rho_hat[n + j]);
    CHECK(std::abs(ein - eout) < 1e-11);
    for (int j = 0; j < mm; ++j) {
      double expect = 0.0;
      for (int i = 0; i < n; ++i)
        expect += A.at(j, i) * m.eval(sol.rho_hat[i]);
      CHECK(std::abs(m.eval(sol.rho_hat[n + j]) - expect) < 1e-11);
    }

    // speed signs
    for (int i = 0; i < n; ++i)
      for (const auto& f : sol.fans[i]) CHECK(f.speed <= 1e-12);
    for (int j = 0; j < mm; ++j)
      for (const auto& f : sol.fans[n + j]) CHECK(f.speed >= -1e-12);

    // maximality against random feasible points
    auto region = build_feasible_region(in, out, A, m);
    CHECK(region.contains(sol.gamma_in, 1e-9));
    double e_hat = 0.0;
    for (double g : sol.gamma_in) e_hat += g;
    for (int probe = 0; probe < 30; ++probe) {
      std::vector<double> gamma(n);
      for (int i = 0; i < n; ++i) gamma[i] = u(rng) * region.demand_bounds[i];
      if (!region.contains(gamma, 0.0)) continue;
      double e = 0.0;
      for (double g : gamma) e += g;
      CHECK(e <= e_hat + 1e-10);
    }

    // idempotence
    std::vector<double> in2(sol.rho_hat.begin(), sol.rho_hat.begin() + n);
    std::vector<double> out2(sol.rho_hat.begin() + n, sol.rho_hat.end());
    auto again = solve_junction_riemann(in2, out2, A, m, 0.05);
    for (int k = 0; k < n + mm; ++k) {
      CHECK(again.rho_hat[k] == doctest::Approx(sol.rho_hat[k]).epsilon(1e-9));
      CHECK(again.fans[k].empty());
    }
  }
}
