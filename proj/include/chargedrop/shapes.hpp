#ifndef CHARGEDROP_SHAPES_HPP
#define CHARGEDROP_SHAPES_HPP

#include <cmath>

#include "chargedrop/core_model.hpp"

namespace chargedrop {

/// Prolate spheroid with equatorial radius r and full length (major axis) h.
struct SpheroidProtrusion {
  double r;
  double h;

  /// r > 0 and h >= 2r (oblate shapes are rejected).
  void validate() const;
  /// Additionally 2r < h < 2 R^3 / r^2, the range where the shrunk ball exists.
  void validate_on(double R) const;
};

/// Energy decomposition of a ball carrying charge Q - q touching a spheroid carrying q.
struct EnergyBreakdown {
  double surf = 0.0;
  double ball = 0.0;
  double ell = 0.0;
  double interaction = 0.0;
  double total = 0.0;
};

// Below this relative eccentricity gap the closed forms are 0/0 and a series is used.
inline constexpr double near_sphere_threshold = 1e-6;

/// Surface area of the prolate spheroid (r, h).
template <class Scalar>
Scalar spheroid_area(Scalar r, Scalar h) {
  using std::asin;
  using std::sqrt;
  const Scalar s2 = h * h - Scalar(4) * r * r;
  if (h - Scalar(2) * r < Scalar(near_sphere_threshold) * h) {
    // asin(e)/e = 1 + e^2/6 + 3 e^4/40 with e^2 = s2/h^2.
    const Scalar e2 = s2 / (h * h);
    return Scalar(2 * pi) * r * r +
           Scalar(pi) * r * h * (Scalar(1) + e2 / Scalar(6) + Scalar(3) * e2 * e2 / Scalar(40));
  }
  const Scalar s = sqrt(s2);
  return Scalar(pi) * (Scalar(2) * r * r + r * h * h * asin(s / h) / s);
}

/// Capacitance of the prolate spheroid (r, h) divided by 4 pi eps0 (a length).
template <class Scalar>
Scalar spheroid_capacitance_length(Scalar r, Scalar h) {
  using std::log1p;
  using std::sqrt;
  const Scalar s2 = h * h - Scalar(4) * r * r;
  if (h - Scalar(2) * r < Scalar(near_sphere_threshold) * h) {
    // C/(4 pi eps0) = a / (1 + e^2/3 + e^4/5), a = h/2.
    const Scalar e2 = s2 / (h * h);
    return Scalar(0.5) * h / (Scalar(1) + e2 / Scalar(3) + e2 * e2 / Scalar(5));
  }
  const Scalar s = sqrt(s2);
  // log argument h(s+h)/(2r^2) - 1 rewritten as 1 + s(h+s)/(2r^2).
  return s / log1p(s * (h + s) / (Scalar(2) * r * r));
}

double shrunk_ball_radius(double R, const SpheroidProtrusion& p);
double spheroid_surface_area(const SpheroidProtrusion& p);
double spheroid_capacitance(const SpheroidProtrusion& p, const PhysicalConstants& c = {});
double interaction_bound(double q, double Qball, double Rprime, double h,
                         const PhysicalConstants& c = {});

/// The split-charge energy bound as a quadratic in the protrusion charge, in
/// droplet Scales units (length R, energy sigma R^2, charge Q_R):
///   E(q) = surface + ball_coeff (Q-q)^2 + ell_coeff q^2 + int_coeff q (Q-q).
struct SplitChargeModel {
  Scales scales;
  double Q;  // scaled total charge
  double surface;
  double ball_coeff;
  double ell_coeff;
  double int_coeff;

  static SplitChargeModel build(const DropletSpec& spec, const SpheroidProtrusion& p,
                                const PhysicalConstants& c = {});

  /// Scaled breakdown at scaled protrusion charge q.
  EnergyBreakdown breakdown(double q) const;
  /// Coefficient of q^2 in E(q).
  double leading_coefficient() const { return ball_coeff + ell_coeff - int_coeff; }
  /// Coefficient of q in E(q).
  double linear_coefficient() const { return (int_coeff - 2.0 * ball_coeff) * Q; }
};

EnergyBreakdown config_energy_bound(const DropletSpec& spec, const SpheroidProtrusion& p,
                                    double q, const PhysicalConstants& c = {});

struct TentacleOptions {
  /// r must stay below slenderness * h for the slender-body capacitance to apply.
  double slenderness = 0.1;
};

double tentacle_energy_bound(const DropletSpec& spec, double r, double h,
                             const PhysicalConstants& c = {}, const TentacleOptions& opt = {});
double optimal_tentacle_radius(const DropletSpec& spec, double h, const PhysicalConstants& c = {});
double tentacle_energy_deficit(const DropletSpec& spec, double h, const PhysicalConstants& c = {});

/// True when the optimal tentacle at height h passes the slenderness and volume guards.
bool tentacle_is_valid(const DropletSpec& spec, double h, const PhysicalConstants& c = {},
                       const TentacleOptions& opt = {});

/// Height in [h_lo, h_hi] where the tentacle deficit changes sign (bisection to rel_tol).
double tentacle_break_even_height(const DropletSpec& spec, double h_lo, double h_hi,
                                  double rel_tol = 1e-12, const PhysicalConstants& c = {});

}  // namespace chargedrop

#endif  // CHARGEDROP_SHAPES_HPP
