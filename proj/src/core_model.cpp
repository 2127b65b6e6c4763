#include "chargedrop/core_model.hpp"

#include <cmath>
#include <string>

#include "chargedrop/errors.hpp"

namespace chargedrop {

namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string(name) + " must be positive and finite, got " +
                      std::to_string(value));
  }
}

}  // namespace

void PhysicalConstants::validate() const {
  require_positive(eps0, "eps0");
  require_positive(kB, "kB");
  require_positive(e_charge, "e_charge");
}

void Liquid::validate() const {
  require_positive(sigma, "sigma");
  require_positive(temperature, "temperature");
  require_positive(ion_density_n0, "ion_density_n0");
  if (!(epsilon_r >= 1.0) || !std::isfinite(epsilon_r)) {
    throw DomainError("epsilon_r must be >= 1, got " + std::to_string(epsilon_r));
  }
}

Liquid water() { return Liquid{0.073, 80.0, 293.0, 6.02e25}; }

Liquid methanol() { return Liquid{0.023, 32.7, 293.0, 6.02e25}; }

void DropletSpec::validate() const {
  require_positive(radius_R, "radius_R");
  liquid.validate();
  if (!(charge_Q >= 0.0) || !std::isfinite(charge_Q)) {
    throw DomainError("charge_Q must be non-negative, got " + std::to_string(charge_Q));
  }
}

Scales Scales::of(const DropletSpec& spec, const PhysicalConstants& c) {
  spec.validate();
  const double R = spec.radius_R;
  return Scales{R, spec.liquid.sigma * R * R, rayleigh_charge(R, spec.liquid.sigma, c)};
}

double rayleigh_charge(double R, double sigma, const PhysicalConstants& c) {
  require_positive(R, "R");
  require_positive(sigma, "sigma");
  c.validate();
  return 8.0 * pi * std::sqrt(c.eps0 * sigma * R * R * R);
}

double debye_radius(const Liquid& liquid, const PhysicalConstants& c) {
  liquid.validate();
  c.validate();
  return std::sqrt(c.eps0 * liquid.epsilon_r * c.kB * liquid.temperature /
                   (2.0 * liquid.ion_density_n0 * c.e_charge * c.e_charge));
}

double ball_energy_conductor(const DropletSpec& spec, const PhysicalConstants& c) {
  const Scales s = Scales::of(spec, c);
  const double x = s.to_charge(spec.charge_Q);
  return s.from_energy(4.0 * pi + 0.5 * Scales::coulomb * x * x);
}

double ball_energy_uniform(const DropletSpec& spec, const PhysicalConstants& c) {
  // Self-energy of a uniformly charged ball is (3/5) Q^2/(4 pi eps0 R).
  const Scales s = Scales::of(spec, c);
  const double x = s.to_charge(spec.charge_Q);
  return s.from_energy(4.0 * pi + 0.6 * Scales::coulomb * x * x);
}

double thermal_energy(const Liquid& liquid, const PhysicalConstants& c) {
  liquid.validate();
  c.validate();
  return c.kB * liquid.temperature;
}

DropletSpec droplet_at_fraction(double R, const Liquid& liquid, double fraction,
                                const PhysicalConstants& c) {
  if (!(fraction >= 0.0)) throw DomainError("charge fraction must be non-negative");
  DropletSpec spec{R, liquid, fraction * rayleigh_charge(R, liquid.sigma, c)};
  spec.validate();
  return spec;
}

}  // namespace chargedrop
