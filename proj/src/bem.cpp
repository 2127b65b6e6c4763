#include "chargedrop/bem.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "chargedrop/errors.hpp"
#include "chargedrop/quadrature.hpp"
#include "chargedrop/roots.hpp"

namespace chargedrop {

namespace {

double distance(const MeridianPoint& a, const MeridianPoint& b) {
  return std::hypot(a.z - b.z, a.rho - b.rho);
}

bool segments_cross(const MeridianPoint& p1, const MeridianPoint& p2, const MeridianPoint& q1,
                    const MeridianPoint& q2) {
  auto orient = [](const MeridianPoint& a, const MeridianPoint& b, const MeridianPoint& c) {
    return (b.z - a.z) * (c.rho - a.rho) - (b.rho - a.rho) * (c.z - a.z);
  };
  const double d1 = orient(q1, q2, p1);
  const double d2 = orient(q1, q2, p2);
  const double d3 = orient(p1, p2, q1);
  const double d4 = orient(p1, p2, q2);
  return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

}  // namespace

GeneratingCurve::GeneratingCurve(std::vector<MeridianPoint> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.size() < 3) throw DomainError("generating curve needs at least two panels");
  for (const auto& p : nodes_) {
    if (!std::isfinite(p.z) || !std::isfinite(p.rho) || p.rho < 0.0) {
      throw DomainError("generating curve nodes must be finite with rho >= 0");
    }
  }
  if (nodes_.front().rho != 0.0 || nodes_.back().rho != 0.0) {
    throw DomainError("generating curve must start and end on the axis (rho = 0)");
  }
  for (std::size_t i = 1; i + 1 < nodes_.size(); ++i) {
    if (!(nodes_[i].rho > 0.0)) throw DomainError("interior curve nodes must lie off the axis");
  }
  for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
    if (!(distance(nodes_[i], nodes_[i + 1]) > 0.0)) {
      throw DomainError("arc length must be strictly increasing (repeated node " +
                        std::to_string(i + 1) + ")");
    }
  }
  const std::size_t n = nodes_.size() - 1;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (segments_cross(nodes_[i], nodes_[i + 1], nodes_[j], nodes_[j + 1])) {
        throw DomainError("generating curve self-intersects (panels " + std::to_string(i) +
                          " and " + std::to_string(j) + ")");
      }
    }
  }
}

GeneratingCurve GeneratingCurve::parse(std::istream& in) {
  std::vector<MeridianPoint> nodes;
  std::vector<int> lines;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    MeridianPoint p{};
    if (!(ls >> p.z)) {
      std::string rest;
      std::istringstream probe(line);
      if (probe >> rest) throw ParseError("expected two numbers 'z rho'", line_no);
      continue;
    }
    if (!(ls >> p.rho)) throw ParseError("expected two numbers 'z rho'", line_no);
    std::string extra;
    if (ls >> extra) throw ParseError("unexpected trailing token '" + extra + "'", line_no);
    if (p.rho < 0.0) throw ParseError("rho must be non-negative", line_no);
    if (!nodes.empty() && !(distance(nodes.back(), p) > 0.0)) {
      throw ParseError("arc length not strictly increasing (repeated point)", line_no);
    }
    nodes.push_back(p);
    lines.push_back(line_no);
  }
  if (nodes.size() < 3) throw ParseError("curve needs at least three points", line_no);
  if (nodes.front().rho != 0.0) throw ParseError("first point must lie on the axis", lines.front());
  if (nodes.back().rho != 0.0) throw ParseError("last point must lie on the axis", lines.back());
  for (std::size_t i = 1; i + 1 < nodes.size(); ++i) {
    if (!(nodes[i].rho > 0.0)) throw ParseError("interior point lies on the axis", lines[i]);
  }
  try {
    return GeneratingCurve(std::move(nodes));
  } catch (const DomainError& e) {
    throw ParseError(e.what(), line_no);
  }
}

double GeneratingCurve::arc_length() const {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) s += distance(nodes_[i], nodes_[i + 1]);
  return s;
}

double GeneratingCurve::enclosed_volume() const {
  double v = 0.0;
  for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
    const auto& a = nodes_[i];
    const auto& b = nodes_[i + 1];
    v += pi / 3.0 * (a.rho * a.rho + a.rho * b.rho + b.rho * b.rho) * (a.z - b.z);
  }
  return std::abs(v);
}

double GeneratingCurve::equivalent_radius() const {
  return std::cbrt(3.0 * enclosed_volume() / (4.0 * pi));
}

GeneratingCurve GeneratingCurve::resampled(int n_panels) const {
  if (n_panels < 2) throw DomainError("resample: need at least two panels");
  std::vector<double> s(nodes_.size(), 0.0);
  for (std::size_t i = 1; i < nodes_.size(); ++i) s[i] = s[i - 1] + distance(nodes_[i - 1], nodes_[i]);
  std::vector<MeridianPoint> out;
  out.reserve(n_panels + 1);
  out.push_back(nodes_.front());
  std::size_t seg = 0;
  for (int k = 1; k < n_panels; ++k) {
    const double target = s.back() * k / n_panels;
    while (s[seg + 1] < target) ++seg;
    const double t = (target - s[seg]) / (s[seg + 1] - s[seg]);
    out.push_back({nodes_[seg].z + t * (nodes_[seg + 1].z - nodes_[seg].z),
                   nodes_[seg].rho + t * (nodes_[seg + 1].rho - nodes_[seg].rho)});
  }
  out.push_back(nodes_.back());
  return GeneratingCurve(std::move(out));
}

GeneratingCurve GeneratingCurve::translated(double dz) const {
  std::vector<MeridianPoint> out = nodes_;
  for (auto& p : out) p.z += dz;
  return GeneratingCurve(std::move(out));
}

GeneratingCurve GeneratingCurve::scaled(double factor) const {
  if (!(factor > 0.0)) throw DomainError("scale factor must be positive");
  std::vector<MeridianPoint> out = nodes_;
  for (auto& p : out) {
    p.z *= factor;
    p.rho *= factor;
  }
  return GeneratingCurve(std::move(out));
}

// ---------------------------------------------------------------------------
// shape families

namespace {

std::vector<MeridianPoint> sphere_nodes(double R, int n) {
  std::vector<MeridianPoint> out(n + 1);
  for (int k = 0; k <= n; ++k) {
    const double th = pi * k / n;
    out[k] = {R * std::cos(th), R * std::sin(th)};
  }
  out.front() = {R, 0.0};
  out.back() = {-R, 0.0};
  return out;
}

std::vector<MeridianPoint> spheroid_nodes(double r, double h, int n) {
  const double a = 0.5 * h;
  std::vector<MeridianPoint> out(n + 1);
  for (int k = 0; k <= n; ++k) {
    const double t = pi * k / n;
    out[k] = {a * std::cos(t), r * std::sin(t)};
  }
  out.front() = {a, 0.0};
  out.back() = {-a, 0.0};
  return out;
}

// Panel lengths along a straight side, growing geometrically away from both ends.
std::vector<double> graded_lengths(double length, int n, double start, double ratio) {
  auto lengths_for = [&](double cap) {
    std::vector<double> l(n);
    for (int k = 0; k < n; ++k) {
      l[k] = std::min(start * std::pow(ratio, std::min(k, n - 1 - k)), cap);
    }
    return l;
  };
  auto total = [](const std::vector<double>& l) {
    double s = 0.0;
    for (double x : l) s += x;
    return s;
  };
  if (start * n >= length) return std::vector<double>(n, length / n);
  std::vector<double> l = lengths_for(length);
  if (total(l) <= length) {
    const double f = length / total(l);
    for (double& x : l) x *= f;
    return l;
  }
  const double cap = bisect([&](double c) { return total(lengths_for(c)) - length; }, start,
                            length, 1e-14);
  l = lengths_for(cap);
  const double f = length / total(l);
  for (double& x : l) x *= f;
  return l;
}

std::vector<MeridianPoint> capped_cylinder_nodes(double r, double h, int n) {
  if (!(h > 2.0 * r)) throw DomainError("capped cylinder needs h > 2r");
  const int n_cap = std::max(4, n / 8);
  const int n_side = n - 2 * n_cap;
  if (n_side < 2) throw DomainError("capped cylinder needs at least 16 panels");
  const double zc = 0.5 * h - r;
  std::vector<MeridianPoint> out;
  out.reserve(n + 1);
  for (int k = 0; k <= n_cap; ++k) {
    const double th = 0.5 * pi * k / n_cap;
    out.push_back({zc + r * std::cos(th), r * std::sin(th)});
  }
  out.front().rho = 0.0;
  const double l_cap = 0.5 * pi * r / n_cap;
  const std::vector<double> side = graded_lengths(2.0 * zc, n_side, l_cap, 1.1);
  double z = zc;
  for (int k = 0; k + 1 < n_side; ++k) {
    z -= side[k];
    out.push_back({z, r});
  }
  for (int k = 0; k <= n_cap; ++k) {
    const double th = 0.5 * pi + 0.5 * pi * k / n_cap;
    out.push_back({-zc + r * std::cos(th), r * std::sin(th)});
  }
  out.back() = {-0.5 * h, 0.0};
  return out;
}

// Closest point of the spheroid centred at (zs, 0) with semi-axes a (along z), b.
struct EllipseFoot {
  double t;
  double dist;
  bool inside;
};

EllipseFoot ellipse_foot(double zs, double a, double b, const MeridianPoint& p) {
  auto d2 = [&](double t) {
    const double dz = zs + a * std::cos(t) - p.z;
    const double dr = b * std::sin(t) - p.rho;
    return dz * dz + dr * dr;
  };
  const int scan = 4000;
  int best = 0;
  for (int i = 1; i <= scan; ++i) {
    if (d2(pi * i / scan) < d2(pi * best / scan)) best = i;
  }
  const double lo = pi * std::max(0, best - 1) / scan;
  const double hi = pi * std::min(scan, best + 1) / scan;
  const double t = golden_maximize([&](double x) { return -d2(x); }, lo, hi, 1e-15).first;
  const double q = (p.z - zs) / a;
  const double w = p.rho / b;
  return {t, std::sqrt(d2(t)), q * q + w * w < 1.0};
}

struct DenseCurve {
  std::vector<MeridianPoint> pts;
  std::vector<double> curvature;
};

// Places n_panels + 1 nodes on a dense polyline so that each panel carries an
// equal share of the integrated density.
std::vector<MeridianPoint> equidistribute(const DenseCurve& dense, const std::vector<double>& w,
                                          int n_panels) {
  const std::size_t m = dense.pts.size();
  std::vector<double> W(m, 0.0);
  for (std::size_t i = 1; i < m; ++i) {
    W[i] = W[i - 1] + 0.5 * (w[i - 1] + w[i]) * distance(dense.pts[i - 1], dense.pts[i]);
  }
  std::vector<MeridianPoint> out;
  out.reserve(n_panels + 1);
  out.push_back(dense.pts.front());
  std::size_t seg = 0;
  for (int k = 1; k < n_panels; ++k) {
    const double target = W.back() * k / n_panels;
    while (W[seg + 1] < target) ++seg;
    const double t = (target - W[seg]) / (W[seg + 1] - W[seg]);
    const auto& a = dense.pts[seg];
    const auto& b = dense.pts[seg + 1];
    out.push_back({a.z + t * (b.z - a.z), a.rho + t * (b.rho - a.rho)});
  }
  out.push_back(dense.pts.back());
  return out;
}

std::vector<MeridianPoint> bump_nodes(const SphereWithSpheroidBump& shape, int n) {
  const double R = shape.R;
  const double a = 0.5 * shape.h;
  const double b = shape.r;
  const double f = shape.fillet_ratio * shape.r;
  if (!(R > 0.0 && b > 0.0 && shape.h >= 2.0 * b)) throw DomainError("invalid sphere-with-bump shape");
  if (!(f > 0.0 && f < a)) throw DomainError("fillet radius must lie in (0, h/2)");
  const double zs = R + a;

  // Fillet centre C(psi) on the circle |C| = R + f, tangent to the spheroid.
  auto centre = [&](double psi) {
    return MeridianPoint{(R + f) * std::cos(psi), (R + f) * std::sin(psi)};
  };
  auto gap = [&](double psi) {
    const EllipseFoot e = ellipse_foot(zs, a, b, centre(psi));
    return (e.inside ? -e.dist : e.dist) - f;
  };
  const double psi = bisect(gap, 0.0, 0.5 * pi, 1e-14);
  const MeridianPoint C = centre(psi);
  if (!(C.rho > f)) throw DomainError("fillet closes the neck; reduce fillet_ratio");
  const double t2 = ellipse_foot(zs, a, b, C).t;
  const MeridianPoint T1{C.z * R / (R + f), C.rho * R / (R + f)};
  const MeridianPoint T2{zs + a * std::cos(t2), b * std::sin(t2)};
  const double alpha1 = std::atan2(T1.rho - C.rho, T1.z - C.z);
  const double alpha2 = std::atan2(T2.rho - C.rho, T2.z - C.z);

  DenseCurve dense;
  const int m_spheroid = 40000;
  const int m_fillet = 4000;
  const int m_ball = 40000;
  for (int i = 0; i <= m_spheroid; ++i) {
    const double t = t2 * i / m_spheroid;
    const double st = std::sin(t);
    const double ct = std::cos(t);
    dense.pts.push_back({zs + a * ct, b * st});
    dense.curvature.push_back(a * b / std::pow(a * a * st * st + b * b * ct * ct, 1.5));
  }
  dense.pts.front().rho = 0.0;
  const std::size_t neck_begin = dense.pts.size();
  for (int i = 1; i < m_fillet; ++i) {
    const double al = alpha2 + (alpha1 - alpha2) * i / m_fillet;
    dense.pts.push_back({C.z + f * std::cos(al), C.rho + f * std::sin(al)});
    dense.curvature.push_back(1.0 / f);
  }
  const std::size_t neck_end = dense.pts.size();
  for (int i = 0; i <= m_ball; ++i) {
    const double th = psi + (pi - psi) * i / m_ball;
    dense.pts.push_back({R * std::cos(th), R * std::sin(th)});
    dense.curvature.push_back(1.0 / R);
  }
  dense.pts.back() = {-R, 0.0};

  // Density: uniform + curvature + proximity to the neck, each normalised.
  const std::size_t m = dense.pts.size();
  std::vector<double> s(m, 0.0);
  for (std::size_t i = 1; i < m; ++i) s[i] = s[i - 1] + distance(dense.pts[i - 1], dense.pts[i]);
  const double s_neck = 0.5 * (s[neck_begin] + s[neck_end - 1]);
  std::vector<double> kappa = dense.curvature;
  std::vector<double> prox(m);
  for (std::size_t i = 0; i < m; ++i) prox[i] = 1.0 / (std::abs(s[i] - s_neck) + f);
  auto integral = [&](const std::vector<double>& v) {
    double acc = 0.0;
    for (std::size_t i = 1; i < m; ++i) acc += 0.5 * (v[i - 1] + v[i]) * (s[i] - s[i - 1]);
    return acc;
  };
  const double Ik = integral(kappa);
  const double Ip = integral(prox);
  std::vector<double> w(m);
  for (std::size_t i = 0; i < m; ++i) {
    w[i] = 0.4 / s.back() + 0.3 * kappa[i] / Ik + 0.3 * prox[i] / Ip;
  }
  return equidistribute(dense, w, n);
}

}  // namespace

GeneratingCurve generating_curve(const ShapeFamily& shape, int n_panels) {
  if (n_panels < 16) throw DomainError("need at least 16 panels");
  struct Visitor {
    int n;
    std::vector<MeridianPoint> operator()(const Sphere& s) const {
      if (!(s.R > 0.0)) throw DomainError("sphere radius must be positive");
      return sphere_nodes(s.R, n);
    }
    std::vector<MeridianPoint> operator()(const ProlateSpheroid& s) const {
      if (!(s.r > 0.0 && s.h >= 2.0 * s.r)) throw DomainError("spheroid needs r > 0, h >= 2r");
      return spheroid_nodes(s.r, s.h, n);
    }
    std::vector<MeridianPoint> operator()(const CappedCylinder& s) const {
      if (!(s.r > 0.0)) throw DomainError("cylinder radius must be positive");
      return capped_cylinder_nodes(s.r, s.h, n);
    }
    std::vector<MeridianPoint> operator()(const SphereWithSpheroidBump& s) const {
      return bump_nodes(s, n);
    }
  };
  return GeneratingCurve(std::visit(Visitor{n_panels}, shape));
}

// ---------------------------------------------------------------------------
// kernel and assembly

namespace {

struct RingEval {
  double K;
  double D;
};

// Ring at (a, za) seen from (rho, z): K(m) and D = sqrt((a + rho)^2 + dz^2).
RingEval ring_eval(double a, double za, double rho, double z) {
  const double dz = za - z;
  const double D2 = (a + rho) * (a + rho) + dz * dz;
  const double m1 = ((a - rho) * (a - rho) + dz * dz) / D2;
  return {complete_elliptic_K_complement(m1), std::sqrt(D2)};
}

// Integral of ln|p(u) - X| for u along the segment P0 -> P1.
double log_distance_integral(const MeridianPoint& P0, const MeridianPoint& P1,
                             const MeridianPoint& X) {
  const double L = distance(P0, P1);
  const double ez = (P1.z - P0.z) / L;
  const double er = (P1.rho - P0.rho) / L;
  const double u0 = (X.z - P0.z) * ez + (X.rho - P0.rho) * er;
  const double d = std::abs((X.z - P0.z) * er - (X.rho - P0.rho) * ez);
  auto F = [d](double x) {
    if (d == 0.0) return x == 0.0 ? 0.0 : x * std::log(std::abs(x)) - x;
    return 0.5 * x * std::log(x * x + d * d) - x + d * std::atan(x / d);
  };
  return F(L - u0) - F(-u0);
}

struct Assembler {
  const std::vector<MeridianPoint>& nodes;
  GaussRule far = GaussRule::legendre(6);
  GaussRule near = GaussRule::legendre(16);
  double near_factor = 3.0;

  MeridianPoint midpoint(std::size_t i) const {
    return {0.5 * (nodes[i].z + nodes[i + 1].z), 0.5 * (nodes[i].rho + nodes[i + 1].rho)};
  }

  // Potential at X from unit surface density on panel j (1/(4 pi eps0) = 1).
  double entry(const MeridianPoint& X, std::size_t j) const {
    const MeridianPoint& P0 = nodes[j];
    const MeridianPoint& P1 = nodes[j + 1];
    const double L = distance(P0, P1);
    auto point = [&](double t) {
      return MeridianPoint{P0.z + t * (P1.z - P0.z), P0.rho + t * (P1.rho - P0.rho)};
    };
    auto kernel = [&](double t) {
      const MeridianPoint p = point(t);
      const RingEval e = ring_eval(p.rho, p.z, X.rho, X.z);
      return 4.0 * p.rho * e.K / e.D * L;
    };
    // Distance from X to the segment.
    const double ez = (P1.z - P0.z) / L;
    const double er = (P1.rho - P0.rho) / L;
    const double u0 = (X.z - P0.z) * ez + (X.rho - P0.rho) * er;
    const double tproj = std::clamp(u0 / L, 0.0, 1.0);
    const double dmin = distance(point(tproj), X);
    if (dmin > near_factor * L) return far.integrate(kernel, 0.0, 1.0);

    // Subtract the logarithmic singularity -2 ln|p - X| and add it back exactly.
    auto remainder = [&](double t) {
      const MeridianPoint p = point(t);
      return kernel(t) + 2.0 * L * std::log(distance(p, X));
    };
    double sum = 0.0;
    if (tproj > 0.0 && tproj < 1.0) {
      sum = near.integrate(remainder, 0.0, tproj) + near.integrate(remainder, tproj, 1.0);
    } else {
      sum = near.integrate(remainder, 0.0, 1.0, 2);
    }
    return sum - 2.0 * log_distance_integral(P0, P1, X);
  }
};

}  // namespace

double ring_potential(double ring_rho, double ring_z, double at_rho, double at_z,
                      const PhysicalConstants& c) {
  if (ring_rho < 0.0 || at_rho < 0.0) throw DomainError("ring_potential: radii must be >= 0");
  if (ring_rho == at_rho && ring_z == at_z) {
    throw DomainError("ring_potential: coincident source and target");
  }
  const RingEval e = ring_eval(ring_rho, ring_z, at_rho, at_z);
  return 2.0 * e.K / (pi * e.D) / (4.0 * pi * c.eps0);
}

Eigen::MatrixXd collocation_matrix(const GeneratingCurve& curve) {
  const Assembler as{curve.nodes()};
  const Eigen::Index n = curve.panel_count();
  Eigen::MatrixXd A(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const MeridianPoint X = as.midpoint(std::size_t(i));
    for (Eigen::Index j = 0; j < n; ++j) A(i, j) = as.entry(X, std::size_t(j));
  }
  return A;
}

Eigen::MatrixXd ring_kernel_matrix(const GeneratingCurve& curve) {
  const Assembler as{curve.nodes()};
  const Eigen::Index n = curve.panel_count();
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const MeridianPoint xi = as.midpoint(std::size_t(i));
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      const MeridianPoint xj = as.midpoint(std::size_t(j));
      const RingEval e = ring_eval(xj.rho, xj.z, xi.rho, xi.z);
      G(i, j) = 2.0 * e.K / (pi * e.D);
    }
  }
  return G;
}

Eigen::VectorXd panel_areas(const GeneratingCurve& curve) {
  const auto& nodes = curve.nodes();
  Eigen::VectorXd a(curve.panel_count());
  for (Eigen::Index j = 0; j < a.size(); ++j) {
    const auto& p = nodes[std::size_t(j)];
    const auto& q = nodes[std::size_t(j) + 1];
    a(j) = pi * (p.rho + q.rho) * distance(p, q);
  }
  return a;
}

PanelSolution solve_unit_potential(const GeneratingCurve& curve) {
  const Eigen::MatrixXd A = collocation_matrix(curve);
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
  PanelSolution sol;
  sol.rcond = lu.rcond();
  if (!(sol.rcond > 1e-14)) {
    std::ostringstream msg;
    msg << "panel system is singular (reciprocal condition estimate " << sol.rcond << ")";
    throw NumericalError(msg.str());
  }
  sol.density = lu.solve(Eigen::VectorXd::Ones(A.rows()));
  sol.areas = panel_areas(curve);
  sol.capacitance_length = sol.density.dot(sol.areas);
  return sol;
}

double capacitance(const GeneratingCurve& curve, const PhysicalConstants& c) {
  c.validate();
  return 4.0 * pi * c.eps0 * solve_unit_potential(curve).capacitance_length;
}

double capacitance(const ShapeFamily& shape, int n_panels, const PhysicalConstants& c) {
  return capacitance(generating_curve(shape, n_panels), c);
}

double equilibrium_energy(const ShapeFamily& shape, double Q, int n_panels,
                          const PhysicalConstants& c) {
  return Q * Q / (2.0 * capacitance(shape, n_panels, c));
}

}  // namespace chargedrop
