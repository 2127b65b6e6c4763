#ifndef CHARGEDROP_BARRIER_HPP
#define CHARGEDROP_BARRIER_HPP

#include <optional>
#include <vector>

#include "chargedrop/core_model.hpp"
#include "chargedrop/shapes.hpp"

namespace chargedrop {

/// How an external field enters the barrier.
enum class FieldMode {
  /// -q R |E| is part of the quadratic minimized over q (default).
  in_minimization,
  /// q is optimized at zero field and -q R |E| is added afterwards.
  post_hoc,
};

struct ChargeOptimum {
  double q = 0.0;       // C
  double energy = 0.0;  // bound total including the field term, J
  EnergyBreakdown parts{};  // J, without the field term
};

ChargeOptimum optimize_protrusion_charge(const DropletSpec& spec, const SpheroidProtrusion& p,
                                         double field, const PhysicalConstants& c = {},
                                         FieldMode mode = FieldMode::in_minimization);

double optimal_protrusion_charge(const DropletSpec& spec, const SpheroidProtrusion& p,
                                 double field, const PhysicalConstants& c = {},
                                 FieldMode mode = FieldMode::in_minimization);

/// Bound energy at the q optimum minus the conductor ball energy. Positive means
/// the unperturbed ball is lower.
double delta_E(const DropletSpec& spec, double r, double h, double field,
               const PhysicalConstants& c = {}, FieldMode mode = FieldMode::in_minimization);

double external_field_correction(double q, double R, double field);

struct BarrierScanResult {
  double r = 0.0;
  std::vector<double> h_samples;
  std::vector<double> deltaE_samples;
  std::vector<double> q_samples;
  double h_max = 0.0;
  double deltaE_max = 0.0;
  double q_at_hmax = 0.0;
  std::optional<double> h0;
  double field_magnitude = 0.0;
  /// False when the grid maximum sits on a range boundary (monotone profile).
  bool interior_maximum = false;
  /// Fewer samples than a meaningful scan needs; no refinement was attempted.
  bool degenerate = false;
};

struct ScanOptions {
  FieldMode mode = FieldMode::in_minimization;
  double hmax_rel_tol = 1e-6;
  double h0_rel_tol = 1e-9;
  /// The instability root is searched no further than this multiple of R.
  double h0_search_limit_over_R = 10.0;
  static constexpr int min_samples = 16;
};

BarrierScanResult scan_barrier(const DropletSpec& spec, double r, double h_min,
                               double h_max_range, int n_samples, double field,
                               const PhysicalConstants& c = {}, const ScanOptions& opt = {});

}  // namespace chargedrop

#endif  // CHARGEDROP_BARRIER_HPP
