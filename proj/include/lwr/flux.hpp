#pragma once

#include <stdexcept>
#include <string>

namespace lwr {

/// Thrown when a density lies outside [0,1] or a flux level outside [0,fmax].
class domain_error : public std::runtime_error {
public:
  explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

enum class Branch { Ascending, Descending };
enum class Side { Left, Right };

/// Concave flux law on [0,1] with f(0)=f(1)=0 and a strict maximum at sigma.
///
/// Two families:
///   - smooth(fmax): the reference quadratic 4*fmax*rho*(1-rho), sigma = 1/2.
///   - kinked(base, nu): (1-nu)*f + nu*T with T the tent of height fmax,
///     which has a corner at sigma and |f'| bounded below by c_lo > 0.
class FluxModel {
public:
  enum class Family { SmoothConcave, KinkedNu };

  static FluxModel smooth(double fmax);
  static FluxModel kinked(const FluxModel& base, double nu);

  Family family() const { return family_; }
  double sigma() const { return sigma_; }
  double fmax() const { return fmax_; }
  double nu() const { return nu_; }
  double c_lo() const { return c_lo_; }
  double c_hi() const { return c_hi_; }

  double operator()(double rho) const { return eval(rho); }
  double eval(double rho) const;

  /// The conjugate density with the same flux level; tau(sigma) = sigma.
  double tau(double rho) const;

  /// Max flux the road can send when its trace is rho.
  double demand(double rho) const;
  /// Max flux the road can absorb when its trace is rho.
  double supply(double rho) const;

  /// Unique density on the requested branch with f(rho) = phi.
  double invert(double phi, Branch branch) const;

  /// f'(rho). Errors at the kink of the KinkedNu family; use the Side
  /// overload there.
  double char_speed(double rho) const;
  double char_speed(double rho, Side side) const;

private:
  FluxModel() = default;

  void check_density(double rho) const;

  Family family_ = Family::SmoothConcave;
  double fmax_ = 1.0;
  double sigma_ = 0.5;
  double nu_ = 0.0;
  double c_lo_ = 0.0;
  double c_hi_ = 0.0;
};

}  // namespace lwr
