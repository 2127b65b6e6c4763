#ifndef CHARGEDROP_SCREENED_BALL_HPP
#define CHARGEDROP_SCREENED_BALL_HPP

#include <optional>
#include <vector>

#include "chargedrop/core_model.hpp"

namespace chargedrop {

/// Radial volume charge density on nodes 0 = s_0 < ... < s_n = R.
struct RadialChargeProfile {
  std::vector<double> grid;  // m
  std::vector<double> rho;   // C/m^3

  /// 4 pi int rho s^2 ds by the trapezoidal rule on the grid.
  double total_charge() const;
};

/// The charge-dependent part of the screened free energy of a ball; the
/// constant surface term 4 pi sigma R^2 is not included.
struct ScreenedEnergyResult {
  double electrostatic = 0.0;  // J, evaluated as (1/2) int rho v
  double entropic = 0.0;       // J, the rho^2 penalty
  double total = 0.0;          // J
  /// Relative difference between the field-energy form and (1/2) int rho v.
  double form_discrepancy = 0.0;
};

struct ScreenedBallSolution {
  RadialChargeProfile profile;
  ScreenedEnergyResult energy;
  std::vector<double> potential;  // V at the grid nodes
  double multiplier = 0.0;        // V, constant of the Euler-Lagrange equation
  double debye_radius = 0.0;      // m
  double rcond = 0.0;
};

struct ScreenedGridOptions {
  int n_grid = 512;
  /// Boundary clustering strength; when unset it is chosen so the last cell is
  /// at most a quarter of the Debye radius.
  std::optional<double> stretch;
};

/// Dimensionless nodes x_0 = 0 < ... < x_n = 1 clustered toward x = 1.
std::vector<double> screened_grid(double rd_over_R, const ScreenedGridOptions& opt);

/// Uses the Debye radius of spec.liquid.
ScreenedBallSolution minimize_screened_ball(const DropletSpec& spec, int n_grid,
                                            const PhysicalConstants& c = {});
ScreenedBallSolution minimize_screened_ball(const DropletSpec& spec, double debye_radius,
                                            const ScreenedGridOptions& opt,
                                            const PhysicalConstants& c = {});

/// (electrostatic - Q^2/(8 pi eps0 R)) / (Q^2/(8 pi eps0 R)).
double screened_vs_conductor_gap(const DropletSpec& spec, int n_grid,
                                 const PhysicalConstants& c = {});
double screened_vs_conductor_gap(const DropletSpec& spec, double debye_radius,
                                 const ScreenedGridOptions& opt, const PhysicalConstants& c = {});

}  // namespace chargedrop

#endif  // CHARGEDROP_SCREENED_BALL_HPP
