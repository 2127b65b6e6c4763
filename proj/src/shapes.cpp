#include "chargedrop/shapes.hpp"

#include <cmath>
#include <string>

#include "chargedrop/errors.hpp"
#include "chargedrop/roots.hpp"

namespace chargedrop {

void SpheroidProtrusion::validate() const {
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("spheroid radius r must be positive");
  if (!(h >= 2.0 * r) || !std::isfinite(h)) {
    throw DomainError("spheroid height h must satisfy h >= 2r (oblate shapes not supported)");
  }
}

void SpheroidProtrusion::validate_on(double R) const {
  validate();
  if (!(h < 2.0 * R * R * R / (r * r))) {
    throw DomainError("protrusion too large: need h < 2R^3/r^2");
  }
}

double shrunk_ball_radius(double R, const SpheroidProtrusion& p) {
  if (!(R > 0.0)) throw DomainError("R must be positive");
  const double deficit = p.h * p.r * p.r / (2.0 * R * R * R);
  if (!(deficit < 1.0) || deficit < 0.0) throw DomainError("protrusion too large");
  return R * std::exp(std::log1p(-deficit) / 3.0);
}

double spheroid_surface_area(const SpheroidProtrusion& p) {
  p.validate();
  return spheroid_area(p.r, p.h);
}

double spheroid_capacitance(const SpheroidProtrusion& p, const PhysicalConstants& c) {
  p.validate();
  c.validate();
  return 4.0 * pi * c.eps0 * spheroid_capacitance_length(p.r, p.h);
}

double interaction_bound(double q, double Qball, double Rprime, double h,
                         const PhysicalConstants& c) {
  if (!(Rprime > 0.0)) throw DomainError("interaction_bound: Rprime must be positive");
  if (!(h >= 0.0)) throw DomainError("interaction_bound: h must be non-negative");
  c.validate();
  return q * Qball / (8.0 * pi * c.eps0) * (1.0 / Rprime + 1.0 / (Rprime + h));
}

SplitChargeModel SplitChargeModel::build(const DropletSpec& spec, const SpheroidProtrusion& p,
                                         const PhysicalConstants& c) {
  p.validate_on(spec.radius_R);
  const Scales s = Scales::of(spec, c);
  const double r = s.to_length(p.r);
  const double h = s.to_length(p.h);
  const double Rp = s.to_length(shrunk_ball_radius(spec.radius_R, p));
  const double half_k = 0.5 * Scales::coulomb;
  SplitChargeModel m{s, s.to_charge(spec.charge_Q), 0, 0, 0, 0};
  m.surface = 4.0 * pi * Rp * Rp + spheroid_area(r, h);
  m.ball_coeff = half_k / Rp;
  m.ell_coeff = half_k / spheroid_capacitance_length(r, h);
  m.int_coeff = half_k * (1.0 / Rp + 1.0 / (Rp + h));
  return m;
}

EnergyBreakdown SplitChargeModel::breakdown(double q) const {
  EnergyBreakdown e;
  e.surf = surface;
  e.ball = ball_coeff * (Q - q) * (Q - q);
  e.ell = ell_coeff * q * q;
  e.interaction = int_coeff * q * (Q - q);
  e.total = e.surf + e.ball + e.ell + e.interaction;
  return e;
}

EnergyBreakdown config_energy_bound(const DropletSpec& spec, const SpheroidProtrusion& p,
                                    double q, const PhysicalConstants& c) {
  if (!(q >= 0.0 && q <= spec.charge_Q)) {
    throw DomainError("protrusion charge must lie in [0, Q]");
  }
  const SplitChargeModel m = SplitChargeModel::build(spec, p, c);
  const EnergyBreakdown scaled = m.breakdown(m.scales.to_charge(q));
  const double u = m.scales.energy_unit;
  EnergyBreakdown e{scaled.surf * u, scaled.ball * u, scaled.ell * u, scaled.interaction * u, 0.0};
  e.total = e.surf + e.ball + e.ell + e.interaction;
  return e;
}

namespace {

void check_tentacle(const DropletSpec& spec, double r, double h, const TentacleOptions& opt) {
  if (!(r > 0.0) || !(h > 0.0)) throw DomainError("tentacle r and h must be positive");
  if (!(r < opt.slenderness * h)) {
    throw DomainError("slender-body asymptotics invalid: need r < " +
                      std::to_string(opt.slenderness) + " h");
  }
  if (!(pi * r * r * h < spec.volume())) {
    throw DomainError("tentacle volume exceeds the drop volume");
  }
}

}  // namespace

double tentacle_energy_bound(const DropletSpec& spec, double r, double h,
                             const PhysicalConstants& c, const TentacleOptions& opt) {
  const Scales s = Scales::of(spec, c);
  check_tentacle(spec, r, h, opt);
  const double rs = s.to_length(r);
  const double hs = s.to_length(h);
  const double Q = s.to_charge(spec.charge_Q);
  const double coulomb = Scales::coulomb * Q * Q / hs;
  return s.from_energy(4.0 * pi + 2.0 * pi * rs * hs + coulomb * (std::log(2.0 * hs / rs) - 1.0));
}

double optimal_tentacle_radius(const DropletSpec& spec, double h, const PhysicalConstants& c) {
  const Scales s = Scales::of(spec, c);
  if (!(h > 0.0)) throw DomainError("tentacle height must be positive");
  if (!(spec.charge_Q > 0.0)) throw DomainError("optimal tentacle radius requires Q > 0");
  const double x = s.to_charge(spec.charge_Q);
  const double hs = s.to_length(h);
  return s.from_length(8.0 * x * x / (hs * hs));
}

double tentacle_energy_deficit(const DropletSpec& spec, double h, const PhysicalConstants& c) {
  const Scales s = Scales::of(spec, c);
  if (!(h > 0.0)) throw DomainError("tentacle height must be positive");
  if (!(spec.charge_Q > 0.0)) throw DomainError("tentacle deficit requires Q > 0");
  const double x = s.to_charge(spec.charge_Q);
  const double hs = s.to_length(h);
  const double bracket = 0.5 * hs - std::log(hs * hs * hs / (4.0 * x * x));
  return s.from_energy(-Scales::coulomb * x * x / hs * bracket);
}

bool tentacle_is_valid(const DropletSpec& spec, double h, const PhysicalConstants& c,
                       const TentacleOptions& opt) {
  try {
    check_tentacle(spec, optimal_tentacle_radius(spec, h, c), h, opt);
    return true;
  } catch (const DomainError&) {
    return false;
  }
}

double tentacle_break_even_height(const DropletSpec& spec, double h_lo, double h_hi,
                                  double rel_tol, const PhysicalConstants& c) {
  const Scales s = Scales::of(spec, c);
  const double x = s.to_charge(spec.charge_Q);
  if (!(x > 0.0)) throw DomainError("tentacle break-even requires Q > 0");
  // Sign of the deficit is minus the sign of the bracket; bisect on the bracket.
  auto bracket = [x](double hs) { return 0.5 * hs - std::log(hs * hs * hs / (4.0 * x * x)); };
  const double root = bisect(bracket, s.to_length(h_lo), s.to_length(h_hi), rel_tol);
  return s.from_length(root);
}

}  // namespace chargedrop
