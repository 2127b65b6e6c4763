#ifndef CHARGEDROP_PERTURBATION_HPP
#define CHARGEDROP_PERTURBATION_HPP

#include <cmath>
#include <optional>

#include "chargedrop/core_model.hpp"

namespace chargedrop {

/// Radii of the spike (r) and of the compensating depression (rprime).
///
/// r = delta exp(-R/delta) underflows for delta/R below ~0.0014, so the logs are
/// authoritative; `r` is exp(log_r) and may be exactly zero when `underflow` is set.
struct InnerRadii {
  double r;
  double rprime;
  double log_r;
  double log_rprime;
  bool underflow;
};

InnerRadii inner_radii(double R, double delta);

/// Smooth non-increasing step: 1 for t <= 1, 0 for t >= 2.
template <class Scalar>
Scalar cutoff_eta(Scalar t) {
  using std::exp;
  auto f = [](Scalar s) { return s > Scalar(0) ? exp(-Scalar(1) / s) : Scalar(0); };
  if (t <= Scalar(1)) return Scalar(1);
  if (t >= Scalar(2)) return Scalar(0);
  const Scalar a = f(Scalar(2) - t);
  return a / (a + f(t - Scalar(1)));
}

/// Axisymmetric spike-and-depression perturbation of the sphere of radius R,
/// centred on the north pole. The depression depth is solved, not supplied.
struct PerturbationParams {
  double delta;
  double R;
  std::optional<double> depression_depth_h;

  /// Checks 0 < delta < R and that spike and depression have disjoint supports.
  static PerturbationParams make(double R, double delta);

  InnerRadii radii() const { return inner_radii(R, delta); }
  /// Polar angle beyond which the perturbation vanishes.
  double support_angle() const;
};

/// Radial displacement at polar angle theta for an explicit depression depth.
double phi_delta_at_depth(double theta, const PerturbationParams& params, double h);
/// Radial displacement at polar angle theta; requires a solved depression depth.
double phi_delta(double theta, const PerturbationParams& params);

/// Volume of the perturbed set minus the ball volume for depression depth h.
double perturbed_volume_excess(const PerturbationParams& params, double h);
double perturbed_volume(const PerturbationParams& params, double h);

double solve_depression_depth(const PerturbationParams& params);
PerturbationParams solved(PerturbationParams params);

/// The braced energy-difference expression for the spike perturbation, carried in
/// log space. Its magnitude is meaningful only up to universal constants; the sign
/// and scaling are what matter.
struct EnergyBracket {
  double value;
  double log_positive;  // log of the surface + self-energy term
  double log_negative;  // log of the interaction gain
  double prefactor;     // Q^2 / (eps0 R), J
  int sign() const { return log_positive > log_negative ? 1 : (log_positive < log_negative ? -1 : 0); }
};

EnergyBracket delta_E0_bracket(const DropletSpec& spec, double delta, const PhysicalConstants& c = {});

/// delta where the bracket changes sign, bisected on [0.002 R, R].
double instability_threshold_delta(const DropletSpec& spec, double rel_tol = 1e-9,
                                   const PhysicalConstants& c = {});

}  // namespace chargedrop

#endif  // CHARGEDROP_PERTURBATION_HPP
