#ifndef CHARGEDROP_BEM_HPP
#define CHARGEDROP_BEM_HPP

#include <Eigen/Dense>
#include <istream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "chargedrop/core_model.hpp"
#include "chargedrop/elliptic.hpp"

namespace chargedrop {

/// Malformed generating-curve input; the message names the offending line.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

struct MeridianPoint {
  double z;
  double rho;
};

/// Boundary of an axisymmetric body in the meridian half-plane, pole to pole.
/// Consecutive nodes are joined by straight panels (cone frusta after rotation).
class GeneratingCurve {
public:
  explicit GeneratingCurve(std::vector<MeridianPoint> nodes);

  /// Two columns "z rho" per line, '#' comments, blank lines ignored.
  static GeneratingCurve parse(std::istream& in);

  const std::vector<MeridianPoint>& nodes() const { return nodes_; }
  int panel_count() const { return int(nodes_.size()) - 1; }
  double arc_length() const;
  double enclosed_volume() const;
  /// Radius of the ball with the same volume.
  double equivalent_radius() const;

  /// Uniform arc-length resampling of the polyline into n_panels panels.
  GeneratingCurve resampled(int n_panels) const;
  GeneratingCurve translated(double dz) const;
  GeneratingCurve scaled(double factor) const;

private:
  std::vector<MeridianPoint> nodes_;
};

struct Sphere {
  double R;
};
struct ProlateSpheroid {
  double r;  // equatorial radius
  double h;  // full length
};
/// Cylinder with hemispherical caps; h is the tip-to-tip length.
struct CappedCylinder {
  double r;
  double h;
};
/// Ball of radius R touching a prolate spheroid (r, h) on the axis; the corner
/// at the contact is replaced by a fillet of radius fillet_ratio * r.
struct SphereWithSpheroidBump {
  double R;
  double r;
  double h;
  double fillet_ratio = 0.25;
};

using ShapeFamily = std::variant<Sphere, ProlateSpheroid, CappedCylinder, SphereWithSpheroidBump>;

GeneratingCurve generating_curve(const ShapeFamily& shape, int n_panels);

/// Potential of a ring carrying unit charge, evaluated at (at_rho, at_z).
double ring_potential(double ring_rho, double ring_z, double at_rho, double at_z,
                      const PhysicalConstants& c = {});

/// Potential (in units where 1/(4 pi eps0) = 1) at panel midpoint i due to unit
/// surface charge density on panel j.
Eigen::MatrixXd collocation_matrix(const GeneratingCurve& curve);

/// Point-ring kernel between panel midpoints (zero diagonal), same units.
Eigen::MatrixXd ring_kernel_matrix(const GeneratingCurve& curve);

/// Lateral areas of the panels after rotation.
Eigen::VectorXd panel_areas(const GeneratingCurve& curve);

struct PanelSolution {
  Eigen::VectorXd density;   // surface charge density per panel at unit potential
  Eigen::VectorXd areas;     // panel areas
  double capacitance_length;  // C / (4 pi eps0), same length unit as the curve
  double rcond;              // reciprocal condition estimate of the system
};

PanelSolution solve_unit_potential(const GeneratingCurve& curve);

double capacitance(const GeneratingCurve& curve, const PhysicalConstants& c = {});
double capacitance(const ShapeFamily& shape, int n_panels, const PhysicalConstants& c = {});
double equilibrium_energy(const ShapeFamily& shape, double Q, int n_panels,
                          const PhysicalConstants& c = {});

}  // namespace chargedrop

#endif  // CHARGEDROP_BEM_HPP
