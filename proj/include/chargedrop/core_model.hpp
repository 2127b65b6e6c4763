#ifndef CHARGEDROP_CORE_MODEL_HPP
#define CHARGEDROP_CORE_MODEL_HPP

#include <numbers>

namespace chargedrop {

inline constexpr double pi = std::numbers::pi;

/// CODATA SI values; pass a modified copy to any operation to inject other constants.
struct PhysicalConstants {
  double eps0 = 8.8541878128e-12;     // F/m
  double kB = 1.380649e-23;           // J/K
  double e_charge = 1.602176634e-19;  // C

  void validate() const;
};

struct Liquid {
  double sigma = 0.073;           // surface tension, N/m
  double epsilon_r = 80.0;        // relative dielectric constant
  double temperature = 293.0;     // K
  double ion_density_n0 = 6.02e25;  // mean free-ion density per species, 1/m^3

  void validate() const;
};

Liquid water();
Liquid methanol();

struct DropletSpec {
  double radius_R = 10e-6;  // m
  Liquid liquid{};
  double charge_Q = 0.0;    // C

  void validate() const;
  double volume() const { return 4.0 / 3.0 * pi * radius_R * radius_R * radius_R; }
};

/// Natural units of a droplet: length R, energy sigma R^2, charge Q_R.
///
/// In these units the Coulomb constant 1/(4 pi eps0) equals 16 pi exactly,
/// so every electrostatic energy stays O(1) regardless of the drop size.
struct Scales {
  double length_unit;
  double energy_unit;
  double charge_unit;

  static Scales of(const DropletSpec& spec, const PhysicalConstants& c = {});

  double to_length(double x) const { return x / length_unit; }
  double from_length(double x) const { return x * length_unit; }
  double to_energy(double e) const { return e / energy_unit; }
  double from_energy(double e) const { return e * energy_unit; }
  double to_charge(double q) const { return q / charge_unit; }
  double from_charge(double q) const { return q * charge_unit; }
  /// Scaled so that (scaled q) * (scaled R) * (scaled field) is a scaled energy.
  double to_field(double field) const { return field * charge_unit * length_unit / energy_unit; }

  static constexpr double coulomb = 16.0 * pi;  // 1/(4 pi eps0) in scaled units
};

double rayleigh_charge(double R, double sigma, const PhysicalConstants& c = {});
double debye_radius(const Liquid& liquid, const PhysicalConstants& c = {});

double ball_energy_conductor(const DropletSpec& spec, const PhysicalConstants& c = {});
double ball_energy_uniform(const DropletSpec& spec, const PhysicalConstants& c = {});

double thermal_energy(const Liquid& liquid, const PhysicalConstants& c = {});
inline double in_kT(double energy, const Liquid& liquid, const PhysicalConstants& c = {}) {
  return energy / thermal_energy(liquid, c);
}

/// Drop of radius R carrying the given fraction of its Rayleigh charge.
DropletSpec droplet_at_fraction(double R, const Liquid& liquid, double fraction,
                                const PhysicalConstants& c = {});

}  // namespace chargedrop

#endif  // CHARGEDROP_CORE_MODEL_HPP
