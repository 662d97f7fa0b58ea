#include "lwr/flux.hpp"

#include <algorithm>
#include <cmath>

namespace lwr {

namespace {

// Tent profile of height fmax, corner at sigma.
double tent(double rho, double sigma, double fmax) {
  if (rho <= sigma) return fmax * rho / sigma;
  return fmax * (1.0 - rho) / (1.0 - sigma);
}

double tent_slope(double rho, double sigma, double fmax, Side side) {
  if (rho < sigma || (rho == sigma && side == Side::Left))
    return fmax / sigma;
  return -fmax / (1.0 - sigma);
}

}  // namespace

FluxModel FluxModel::smooth(double fmax) {
  if (!(fmax > 0.0)) throw domain_error("fmax must be positive");
  FluxModel m;
  m.family_ = Family::SmoothConcave;
  m.fmax_ = fmax;
  m.sigma_ = 0.5;
  m.nu_ = 0.0;
  m.c_lo_ = 0.0;
  m.c_hi_ = 4.0 * fmax;
  return m;
}

FluxModel FluxModel::kinked(const FluxModel& base, double nu) {
  if (base.family_ != Family::SmoothConcave)
    throw domain_error("kinked family requires a smooth base flux");
  if (!(nu > 0.0 && nu < 1.0))
    throw domain_error("nu must lie in (0,1)");
  FluxModel m;
  m.family_ = Family::KinkedNu;
  m.fmax_ = base.fmax_;
  m.sigma_ = base.sigma_;
  m.nu_ = nu;
  double tent_min = m.fmax_ * std::min(1.0 / m.sigma_, 1.0 / (1.0 - m.sigma_));
  double tent_max = m.fmax_ * std::max(1.0 / m.sigma_, 1.0 / (1.0 - m.sigma_));
  m.c_lo_ = nu * tent_min;
  m.c_hi_ = (1.0 - nu) * base.c_hi_ + nu * tent_max;
  return m;
}

void FluxModel::check_density(double rho) const {
  if (!(rho >= 0.0 && rho <= 1.0))
    throw domain_error("density " + std::to_string(rho) + " outside [0,1]");
}

double FluxModel::eval(double rho) const {
  check_density(rho);
  double smooth = 4.0 * fmax_ * rho * (1.0 - rho);
  if (family_ == Family::SmoothConcave) return smooth;
  return (1.0 - nu_) * smooth + nu_ * tent(rho, sigma_, fmax_);
}

double FluxModel::tau(double rho) const {
  check_density(rho);
  if (rho == sigma_) return sigma_;
  // Both families are symmetric about sigma = 1/2.
  return 1.0 - rho;
}

double FluxModel::demand(double rho) const {
  check_density(rho);
  return rho <= sigma_ ? eval(rho) : fmax_;
}

double FluxModel::supply(double rho) const {
  check_density(rho);
  return rho <= sigma_ ? fmax_ : eval(rho);
}

double FluxModel::invert(double phi, Branch branch) const {
  if (!(phi >= 0.0))
    throw domain_error("flux level must be non-negative");
  if (phi > fmax_ * (1.0 + 1e-12))
    throw domain_error("flux level " + std::to_string(phi) +
                       " exceeds fmax " + std::to_string(fmax_));
  phi = std::min(phi, fmax_);
  if (family_ == Family::SmoothConcave) {
    // 4*fmax*rho*(1-rho) = phi
    double disc = std::max(0.0, 1.0 - phi / fmax_);
    double r = 0.5 * std::sqrt(disc);
    return branch == Branch::Ascending ? 0.5 - r : 0.5 + r;
  }
  // Bisection on the monotone branch.
  double lo, hi;
  if (branch == Branch::Ascending) {
    lo = 0.0;
    hi = sigma_;
  } else {
    lo = sigma_;
    hi = 1.0;
  }
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    double v = eval(mid);
    bool go_right = (branch == Branch::Ascending) ? (v < phi) : (v > phi);
    if (go_right)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-16) break;
  }
  return 0.5 * (lo + hi);
}

double FluxModel::char_speed(double rho) const {
  check_density(rho);
  if (family_ == Family::KinkedNu && rho == sigma_)
    throw domain_error("derivative at the kink needs a side selector");
  return char_speed(rho, rho < sigma_ ? Side::Left : Side::Right);
}

double FluxModel::char_speed(double rho, Side side) const {
  check_density(rho);
  double smooth = 4.0 * fmax_ * (1.0 - 2.0 * rho);
  if (family_ == Family::SmoothConcave) return smooth;
  return (1.0 - nu_) * smooth + nu_ * tent_slope(rho, sigma_, fmax_, side);
}

}  // namespace lwr
