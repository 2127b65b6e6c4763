#include "chargedrop/barrier.hpp"

#include <algorithm>
#include <cmath>

#include "chargedrop/errors.hpp"
#include "chargedrop/roots.hpp"

namespace chargedrop {

namespace {

struct ScaledOptimum {
  double q;
  double energy;
  EnergyBreakdown parts;
};

// Minimizes E(q) - q R E over q in [0, Q] in scaled units.
ScaledOptimum minimize_scaled(const SplitChargeModel& m, double field_scaled) {
  const double a = m.leading_coefficient();
  if (!(a > 0.0)) {
    throw NumericalError("decomposition invalid: quadratic in q is not convex");
  }
  const double b = m.linear_coefficient() - field_scaled;  // R = 1 in scaled units
  const double q = std::clamp(-b / (2.0 * a), 0.0, m.Q);
  const EnergyBreakdown parts = m.breakdown(q);
  return {q, parts.total - q * field_scaled, parts};
}

ScaledOptimum optimum(const SplitChargeModel& m, double field_scaled, FieldMode mode) {
  if (mode == FieldMode::in_minimization) return minimize_scaled(m, field_scaled);
  ScaledOptimum o = minimize_scaled(m, 0.0);
  o.energy -= o.q * field_scaled;
  return o;
}

EnergyBreakdown to_si(const EnergyBreakdown& e, double unit) {
  return {e.surf * unit, e.ball * unit, e.ell * unit, e.interaction * unit, e.total * unit};
}

}  // namespace

ChargeOptimum optimize_protrusion_charge(const DropletSpec& spec, const SpheroidProtrusion& p,
                                         double field, const PhysicalConstants& c,
                                         FieldMode mode) {
  if (!(field >= 0.0)) throw DomainError("field magnitude must be non-negative");
  const SplitChargeModel m = SplitChargeModel::build(spec, p, c);
  const ScaledOptimum o = optimum(m, m.scales.to_field(field), mode);
  return {m.scales.from_charge(o.q), m.scales.from_energy(o.energy),
          to_si(o.parts, m.scales.energy_unit)};
}

double optimal_protrusion_charge(const DropletSpec& spec, const SpheroidProtrusion& p,
                                 double field, const PhysicalConstants& c, FieldMode mode) {
  return optimize_protrusion_charge(spec, p, field, c, mode).q;
}

namespace {

struct ScaledDelta {
  double delta;
  double q;
};

ScaledDelta delta_scaled(const DropletSpec& spec, double r, double h, double field,
                         const PhysicalConstants& c, FieldMode mode) {
  const SplitChargeModel m = SplitChargeModel::build(spec, SpheroidProtrusion{r, h}, c);
  const ScaledOptimum o = optimum(m, m.scales.to_field(field), mode);
  const double ball = 4.0 * pi + 0.5 * Scales::coulomb * m.Q * m.Q;
  return {o.energy - ball, o.q};
}

}  // namespace

double delta_E(const DropletSpec& spec, double r, double h, double field,
               const PhysicalConstants& c, FieldMode mode) {
  if (!(field >= 0.0)) throw DomainError("field magnitude must be non-negative");
  const Scales s = Scales::of(spec, c);
  return s.from_energy(delta_scaled(spec, r, h, field, c, mode).delta);
}

double external_field_correction(double q, double R, double field) {
  if (!(q >= 0.0 && R >= 0.0 && field >= 0.0)) {
    throw DomainError("external_field_correction: arguments must be non-negative");
  }
  return -q * R * field;
}

BarrierScanResult scan_barrier(const DropletSpec& spec, double r, double h_min,
                               double h_max_range, int n_samples, double field,
                               const PhysicalConstants& c, const ScanOptions& opt) {
  const Scales s = Scales::of(spec, c);
  if (!(r > 0.0)) throw DomainError("scan_barrier: r must be positive");
  if (!(field >= 0.0)) throw DomainError("field magnitude must be non-negative");
  if (n_samples < 1) throw DomainError("scan_barrier: need at least one sample");
  if (!(h_min >= 2.0 * r * (1.0 + 1e-9))) {
    throw DomainError("scan_barrier: h_min must exceed 2r (1 + 1e-9)");
  }
  const double R = spec.radius_R;
  const double h_geom = 2.0 * R * R * R / (r * r) * (1.0 - 1e-9);
  const double h_hi = std::min(h_max_range, h_geom);
  if (!(h_hi > h_min) && n_samples > 1) throw DomainError("scan_barrier: empty valid h range");

  BarrierScanResult res;
  res.r = r;
  res.field_magnitude = field;
  res.degenerate = n_samples < ScanOptions::min_samples;

  auto eval = [&](double h) { return delta_scaled(spec, r, h, field, c, opt.mode); };

  const double log_lo = std::log(h_min);
  const double log_hi = std::log(std::max(h_hi, h_min));
  res.h_samples.resize(n_samples);
  res.deltaE_samples.resize(n_samples);
  res.q_samples.resize(n_samples);
  for (int i = 0; i < n_samples; ++i) {
    const double t = n_samples == 1 ? 0.0 : double(i) / double(n_samples - 1);
    double h = std::exp(log_lo + t * (log_hi - log_lo));
    if (i == 0) h = h_min;
    if (i == n_samples - 1 && n_samples > 1) h = h_hi;
    const ScaledDelta d = eval(h);
    res.h_samples[i] = h;
    res.deltaE_samples[i] = s.from_energy(d.delta);
    res.q_samples[i] = s.from_charge(d.q);
  }

  const auto it = std::max_element(res.deltaE_samples.begin(), res.deltaE_samples.end());
  const std::size_t imax = std::size_t(it - res.deltaE_samples.begin());
  res.h_max = res.h_samples[imax];
  res.deltaE_max = res.deltaE_samples[imax];
  res.q_at_hmax = res.q_samples[imax];
  res.interior_maximum = imax > 0 && imax + 1 < res.h_samples.size();

  if (res.interior_maximum && !res.degenerate) {
    // Refine in log h on the two cells around the grid argmax; a width of
    // hmax_rel_tol in log h is a relative tolerance on h.
    auto f = [&](double logh) { return eval(std::exp(logh)).delta; };
    const double best = golden_maximize(f, std::log(res.h_samples[imax - 1]),
                                        std::log(res.h_samples[imax + 1]), opt.hmax_rel_tol)
                            .first;
    res.h_max = std::exp(best);
    const ScaledDelta d = eval(res.h_max);
    res.deltaE_max = s.from_energy(d.delta);
    res.q_at_hmax = s.from_charge(d.q);
  }

  // Instability root: first + to - crossing beyond the maximum.
  auto g = [&](double h) { return eval(h).delta; };
  for (std::size_t i = imax; i + 1 < res.h_samples.size(); ++i) {
    if (res.deltaE_samples[i] > 0.0 && res.deltaE_samples[i + 1] <= 0.0) {
      res.h0 = bisect(g, res.h_samples[i], res.h_samples[i + 1], opt.h0_rel_tol);
      break;
    }
  }
  if (!res.h0 && !res.degenerate && res.deltaE_samples.back() > 0.0) {
    const double limit = std::min(opt.h0_search_limit_over_R * R, h_geom);
    double a = res.h_samples.back();
    while (a < limit) {
      const double b = std::min(a * 1.25, limit);
      if (g(b) <= 0.0) {
        res.h0 = bisect(g, a, b, opt.h0_rel_tol);
        break;
      }
      a = b;
    }
  }
  return res;
}

}  // namespace chargedrop
