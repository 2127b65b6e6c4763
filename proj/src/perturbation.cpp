#include "chargedrop/perturbation.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "chargedrop/errors.hpp"
#include "chargedrop/quadrature.hpp"
#include "chargedrop/roots.hpp"

namespace chargedrop {

InnerRadii inner_radii(double R, double delta) {
  if (!(R > 0.0) || !(delta > 0.0) || !(delta < R)) {
    throw DomainError("inner_radii: need 0 < delta < R");
  }
  InnerRadii out{};
  out.log_r = std::log(delta) - R / delta;
  out.log_rprime = 0.25 * (out.log_r + std::log(R) + 2.0 * std::log(delta));
  out.r = std::exp(out.log_r);
  out.rprime = std::exp(out.log_rprime);
  out.underflow = out.r < std::numeric_limits<double>::min();
  return out;
}

PerturbationParams PerturbationParams::make(double R, double delta) {
  const InnerRadii ir = inner_radii(R, delta);
  if (!(ir.log_rprime < std::log(delta))) {
    throw DomainError("perturbation: depression radius must stay below delta");
  }
  // Spike support (chord 2r) must end before the depression starts (chord r'/2).
  if (!(std::log(4.0) + ir.log_r < ir.log_rprime)) {
    throw DomainError("perturbation: spike and depression supports overlap");
  }
  if (!(ir.rprime < R)) throw DomainError("perturbation: depression wider than the sphere");
  return PerturbationParams{delta, R, std::nullopt};
}

double PerturbationParams::support_angle() const {
  return 2.0 * std::asin(0.5 * radii().rprime / R);
}

namespace {

// Polar angle at chord distance c from the pole.
double angle_of_chord(double c) { return 2.0 * std::asin(0.5 * c); }

double displacement(double theta, double R, double delta, const InnerRadii& ir, double h) {
  const double chord = 2.0 * std::sin(0.5 * theta);
  // R chord / r evaluated through logs so an underflowed r still works.
  const double t_spike = chord > 0.0 ? std::exp(std::log(R * chord) - ir.log_r) : 0.0;
  const double e2 = cutoff_eta(2.0 * R * chord / ir.rprime);
  return delta * cutoff_eta(t_spike) - h * e2 * (1.0 - e2);
}

}  // namespace

double phi_delta_at_depth(double theta, const PerturbationParams& params, double h) {
  if (!(theta >= 0.0 && theta <= pi)) throw DomainError("phi_delta: theta must lie in [0, pi]");
  return displacement(theta, params.R, params.delta, params.radii(), h);
}

double phi_delta(double theta, const PerturbationParams& params) {
  if (!params.depression_depth_h) {
    throw StateError("phi_delta: depression depth not solved");
  }
  return phi_delta_at_depth(theta, params, *params.depression_depth_h);
}

double perturbed_volume_excess(const PerturbationParams& params, double h) {
  static const GaussRule rule = GaussRule::legendre(20);
  const double R = params.R;
  const InnerRadii ir = params.radii();
  auto integrand = [&](double theta) {
    // ((R + d)^3 - R^3)/3 without cancellation; d can be far below ulp(R).
    const double d = displacement(theta, R, params.delta, ir, h);
    return (d * (3.0 * R * R + 3.0 * R * d + d * d) / 3.0) * 2.0 * pi * std::sin(theta);
  };
  double excess = 0.0;
  if (!ir.underflow) {
    const double th1 = angle_of_chord(ir.r / R);
    const double th2 = angle_of_chord(2.0 * ir.r / R);
    excess += rule.integrate(integrand, 0.0, th1, 8);
    excess += rule.integrate(integrand, th1, th2, 64);
  }
  const double th3 = angle_of_chord(0.5 * ir.rprime / R);
  const double th4 = angle_of_chord(ir.rprime / R);
  excess += rule.integrate(integrand, th3, th4, 64);
  return excess;
}

double perturbed_volume(const PerturbationParams& params, double h) {
  const double R = params.R;
  return 4.0 / 3.0 * pi * R * R * R + perturbed_volume_excess(params, h);
}

double solve_depression_depth(const PerturbationParams& params) {
  const double rp = params.radii().rprime;
  auto f = [&](double h) { return perturbed_volume_excess(params, h); };
  if (f(0.0) <= 0.0) return 0.0;
  if (!(f(rp) < 0.0)) throw DomainError("perturbation inconsistent: no depression depth in [0, r']");
  const double h = bisect(f, 0.0, rp, 1e-15);
  if (!(h < 0.5 * rp)) {
    throw DomainError("perturbation inconsistent: depression depth not small against r'");
  }
  return h;
}

PerturbationParams solved(PerturbationParams params) {
  params.depression_depth_h = solve_depression_depth(params);
  return params;
}

EnergyBracket delta_E0_bracket(const DropletSpec& spec, double delta, const PhysicalConstants& c) {
  const Scales s = Scales::of(spec, c);
  const double R = spec.radius_R;
  if (!(delta > 0.0 && delta < R)) throw DomainError("delta_E0_bracket: need 0 < delta < R");
  const double x = s.to_charge(spec.charge_Q);
  if (!(x > 0.0)) throw DomainError("delta_E0_bracket: requires Q > 0");
  const double t = delta / R;
  EnergyBracket b{};
  b.log_positive = std::log(t / (x * x) + 1.0) + std::log(t) - 1.0 / t;
  b.log_negative = 2.5 * std::log(t) - 0.5 / t;
  if (b.log_positive >= b.log_negative) {
    b.value = -std::exp(b.log_positive) * std::expm1(b.log_negative - b.log_positive);
  } else {
    b.value = std::exp(b.log_negative) * std::expm1(b.log_positive - b.log_negative);
  }
  b.prefactor = spec.charge_Q * spec.charge_Q / (c.eps0 * R);
  return b;
}

double instability_threshold_delta(const DropletSpec& spec, double rel_tol,
                                   const PhysicalConstants& c) {
  const double R = spec.radius_R;
  if (!(spec.charge_Q > 0.0)) throw DomainError("instability threshold requires Q > 0");
  const double lo = 0.002 * R;
  const double hi = R * (1.0 - 1e-12);
  auto g = [&](double delta) {
    const EnergyBracket b = delta_E0_bracket(spec, delta, c);
    return b.log_positive - b.log_negative;
  };
  const double g_lo = g(lo);
  const double g_hi = g(hi);
  if (!(g_lo < 0.0 && g_hi > 0.0)) {
    std::ostringstream msg;
    msg << "instability threshold not bracketed: log-term difference " << g_lo
        << " at delta/R = 0.002 and " << g_hi << " at delta/R = 1";
    throw DomainError(msg.str());
  }
  return bisect(g, lo, hi, rel_tol);
}

}  // namespace chargedrop
