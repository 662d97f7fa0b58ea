#include "lwr/riemann.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace lwr {

namespace {
constexpr double kDensityTol = 1e-12;
}

double rankine_hugoniot_speed(const FluxModel& m, double rho_l, double rho_r) {
  return (m.eval(rho_r) - m.eval(rho_l)) / (rho_r - rho_l);
}

WaveFan solve_road_riemann(double rho_l, double rho_r, const FluxModel& m,
                           double delta) {
  if (!(delta > 0.0)) throw domain_error("delta must be positive");
  WaveFan fan;
  if (std::abs(rho_l - rho_r) <= kDensityTol) return fan;
  if (rho_l < rho_r) {
    // Entropic shock for concave flux.
    fan.push_back({rho_l, rho_r, rankine_hugoniot_speed(m, rho_l, rho_r)});
    return fan;
  }
  // Rarefaction, discretized into rarefaction shocks on the delta grid
  // anchored at rho_l, inserting sigma where the grid straddles it.
  std::vector<double> values;
  values.push_back(rho_l);
  for (int k = 1;; ++k) {
    double v = rho_l - k * delta;
    if (v <= rho_r + kDensityTol) {
      values.push_back(rho_r);
      break;
    }
    values.push_back(v);
  }
  double sigma = m.sigma();
  for (size_t k = 0; k + 1 < values.size(); ++k)
    if (values[k + 1] < sigma - kDensityTol &&
        values[k] > sigma + kDensityTol) {
      values.insert(values.begin() + k + 1, sigma);
      break;
    }
  for (size_t k = 0; k + 1 < values.size(); ++k)
    fan.push_back({values[k], values[k + 1],
                   rankine_hugoniot_speed(m, values[k], values[k + 1])});
  return fan;
}

bool FeasibleRegion::contains(const std::vector<double>& gamma,
                              double tol) const {
  for (int i = 0; i < n(); ++i)
    if (gamma[i] < -tol || gamma[i] > demand_bounds[i] + tol) return false;
  for (int j = 0; j < m(); ++j) {
    double v = 0.0;
    for (int i = 0; i < n(); ++i) v += effective.at(j, i) * gamma[i];
    if (v > supply_bounds[j] + tol) return false;
  }
  return true;
}

FeasibleRegion build_feasible_region(const std::vector<double>& in_traces,
                                     const std::vector<double>& out_traces,
                                     const DistributionMatrix& effective,
                                     const FluxModel& m) {
  FeasibleRegion region;
  region.effective = effective;
  for (size_t i = 0; i < in_traces.size(); ++i) {
    // A zero column means the light for road i is red: no flux may leave.
    double col = 0.0;
    for (int j = 0; j < effective.m; ++j)
      col += effective.at(j, static_cast<int>(i));
    region.demand_bounds.push_back(col == 0.0 ? 0.0 : m.demand(in_traces[i]));
  }
  for (double t : out_traces) region.supply_bounds.push_back(m.supply(t));
  return region;
}

namespace {

// Solves the k x k system H x = rhs by Gaussian elimination with partial
// pivoting. Returns false when singular.
bool solve_small(std::array<std::array<double, 3>, 3>& H,
                 std::array<double, 3>& rhs, int k) {
  for (int c = 0; c < k; ++c) {
    int piv = c;
    for (int r = c + 1; r < k; ++r)
      if (std::abs(H[r][c]) > std::abs(H[piv][c])) piv = r;
    if (std::abs(H[piv][c]) < 1e-13) return false;
    std::swap(H[c], H[piv]);
    std::swap(rhs[c], rhs[piv]);
    for (int r = c + 1; r < k; ++r) {
      double f = H[r][c] / H[c][c];
      for (int cc = c; cc < k; ++cc) H[r][cc] -= f * H[c][cc];
      rhs[r] -= f * rhs[c];
    }
  }
  for (int c = k - 1; c >= 0; --c) {
    for (int cc = c + 1; cc < k; ++cc) rhs[c] -= H[c][cc] * rhs[cc];
    rhs[c] /= H[c][c];
  }
  return true;
}

}  // namespace

std::vector<double> maximize_through_flux(const FeasibleRegion& region) {
  int n = region.n();
  int mm = region.m();
  // Hyperplane list: gamma_i = 0, gamma_i = d_i, (A gamma)_j = s_j.
  struct Plane {
    std::array<double, 3> normal{};
    double offset = 0.0;
  };
  std::vector<Plane> planes;
  for (int i = 0; i < n; ++i) {
    Plane p0;
    p0.normal[i] = 1.0;
    p0.offset = 0.0;
    planes.push_back(p0);
    Plane pd = p0;
    pd.offset = region.demand_bounds[i];
    planes.push_back(pd);
  }
  for (int j = 0; j < mm; ++j) {
    Plane p;
    for (int i = 0; i < n; ++i) p.normal[i] = region.effective.at(j, i);
    p.offset = region.supply_bounds[j];
    planes.push_back(p);
  }

  double scale = 1.0;
  for (double d : region.demand_bounds) scale = std::max(scale, d);
  for (double s : region.supply_bounds) scale = std::max(scale, s);
  const double feas_tol = 1e-9 * scale;

  std::vector<double> best(n, 0.0);  // origin is always feasible
  double best_e = 0.0;
  auto consider = [&](const std::vector<double>& gamma) {
    if (!region.contains(gamma, feas_tol)) return;
    double e = 0.0;
    for (double g : gamma) e += g;
    if (e > best_e + 1e-12 * scale) {
      best_e = e;
      best = gamma;
      return;
    }
    if (e < best_e - 1e-12 * scale) return;
    // Tie: keep the lexicographically largest point.
    for (int i = 0; i < n; ++i) {
      if (gamma[i] > best[i] + 1e-12 * scale) {
        best_e = e;
        best = gamma;
        return;
      }
      if (gamma[i] < best[i] - 1e-12 * scale) return;
    }
  };

  int total = static_cast<int>(planes.size());
  std::vector<int> pick(n);
  std::vector<double> gamma(n);
  auto enumerate = [&](auto&& self, int start, int depth) -> void {
    if (depth == n) {
      std::array<std::array<double, 3>, 3> H{};
      std::array<double, 3> rhs{};
      for (int r = 0; r < n; ++r) {
        H[r] = planes[pick[r]].normal;
        rhs[r] = planes[pick[r]].offset;
      }
      if (!solve_small(H, rhs, n)) return;
      for (int i = 0; i < n; ++i) gamma[i] = rhs[i];
      consider(gamma);
      return;
    }
    for (int p = start; p <= total - (n - depth); ++p) {
      pick[depth] = p;
      self(self, p + 1, depth + 1);
    }
  };
  enumerate(enumerate, 0, 0);
  // Clamp away feasibility-tolerance overshoot.
  for (int i = 0; i < n; ++i)
    best[i] = std::clamp(best[i], 0.0, region.demand_bounds[i]);
  return best;
}

DistributionMatrix effective_matrix(const ScheduleEntry& entry) {
  DistributionMatrix A = entry.matrix;
  if (!entry.lights.empty())
    for (int i = 0; i < A.n; ++i)
      if (entry.lights[i] == 0)
        for (int j = 0; j < A.m; ++j) A.at(j, i) = 0.0;
  return A;
}

JunctionSolution solve_junction_riemann(const std::vector<double>& in_traces,
                                        const std::vector<double>& out_traces,
                                        const DistributionMatrix& effective,
                                        const FluxModel& m, double delta) {
  FeasibleRegion region =
      build_feasible_region(in_traces, out_traces, effective, m);
  JunctionSolution sol;
  sol.gamma_in = maximize_through_flux(region);
  int n = region.n();
  int mm = region.m();
  sol.gamma_out.assign(mm, 0.0);
  for (int j = 0; j < mm; ++j)
    for (int i = 0; i < n; ++i)
      sol.gamma_out[j] += effective.at(j, i) * sol.gamma_in[i];

  const double eq_tol = 1e-12 * m.fmax();
  for (int i = 0; i < n; ++i) {
    double trace = in_traces[i];
    double g = sol.gamma_in[i];
    double rho_hat;
    if (std::abs(g - m.demand(trace)) <= eq_tol && trace <= m.sigma())
      rho_hat = trace;  // wave-free branch of (ammentr)
    else
      rho_hat = m.invert(g, Branch::Descending);
    sol.rho_hat.push_back(rho_hat);
    sol.fans.push_back(solve_road_riemann(trace, rho_hat, m, delta));
  }
  for (int j = 0; j < mm; ++j) {
    double trace = out_traces[j];
    double g = sol.gamma_out[j];
    double rho_hat;
    if (std::abs(g - m.supply(trace)) <= eq_tol && trace >= m.sigma())
      rho_hat = trace;  // wave-free branch of (ammusc)
    else
      rho_hat = m.invert(g, Branch::Ascending);
    sol.rho_hat.push_back(rho_hat);
    sol.fans.push_back(solve_road_riemann(rho_hat, trace, m, delta));
  }
  return sol;
}

}  // namespace lwr
