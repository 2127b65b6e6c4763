#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "chargedrop/barrier.hpp"
#include "chargedrop/bem.hpp"
#include "chargedrop/errors.hpp"
#include "chargedrop/shapes.hpp"

using namespace chargedrop;

namespace {

// Periodic trapezoid in the angle; spectrally accurate for smooth integrands.
double K_oracle(double m) {
  const int n = 4000;
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = (i + 0.5) * (0.5 * pi) / n;
    s += 1.0 / std::sqrt(1.0 - m * std::sin(t) * std::sin(t));
  }
  return s * (0.5 * pi) / n;
}

// Ring of unit charge: average of point potentials over the ring angle.
double ring_oracle(double a, double za, double rho, double z, double eps0) {
  const int n = 20000;
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const double phi = 2.0 * pi * (i + 0.5) / n;
    const double d2 = rho * rho + a * a - 2.0 * a * rho * std::cos(phi) + (z - za) * (z - za);
    s += 1.0 / std::sqrt(d2);
  }
  return s / n / (4.0 * pi * eps0);
}

std::istringstream text(const char* s) { return std::istringstream(s); }

}  // namespace

TEST_CASE("complete elliptic K") {
  CHECK(complete_elliptic_K(0.0) == doctest::Approx(pi / 2).epsilon(1e-15));
  CHECK(complete_elliptic_K(0.5) == doctest::Approx(1.854074677).epsilon(1e-9));
  CHECK(complete_elliptic_K(1.0 - 1e-10) > 12.0);
  const double m1 = 1.0 - (1.0 - 1e-10);
  const double L = 0.5 * std::log(16.0 / m1);
  CHECK(complete_elliptic_K(1.0 - 1e-10) == doctest::Approx(L + 0.25 * m1 * (L - 1.0)).epsilon(1e-14));
  for (double m : {0.1, 0.3, 0.7, 0.9, 0.99}) {
    CHECK(complete_elliptic_K(m) == doctest::Approx(K_oracle(m)).epsilon(1e-12));
  }
  CHECK(complete_elliptic_K_complement(1e-300) > 300.0);
  CHECK_THROWS_AS(complete_elliptic_K(1.0), DomainError);
  CHECK_THROWS_AS(complete_elliptic_K(-0.1), DomainError);
}

TEST_CASE("ring potential") {
  const PhysicalConstants c;
  const double k = 1.0 / (4.0 * pi * c.eps0);
  CHECK(ring_potential(1.0, 0.0, 0.0, 2.0, c) == doctest::Approx(k / std::sqrt(5.0)).epsilon(1e-14));
  const double far = ring_potential(1.0, 0.0, 60.0, 80.0, c);
  CHECK(far == doctest::Approx(k / 100.0).epsilon(0.01));
  CHECK(ring_potential(1.0, 0.3, 1.7, -0.4, c) ==
        doctest::Approx(ring_oracle(1.0, 0.3, 1.7, -0.4, c.eps0)).epsilon(1e-10));
  CHECK_THROWS_AS(ring_potential(1.0, 0.0, 1.0, 0.0, c), DomainError);
}

TEST_CASE("ring potential reciprocity") {
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> u(0.01, 3.0);
  for (int i = 0; i < 500; ++i) {
    const double a = u(rng), za = u(rng), b = u(rng), zb = u(rng);
    CHECK(ring_potential(a, za, b, zb) == doctest::Approx(ring_potential(b, zb, a, za)).epsilon(1e-13));
  }
}

TEST_CASE("kernel matrices") {
  const GeneratingCurve curve = generating_curve(ProlateSpheroid{1.0, 4.0}, 64);
  const Eigen::MatrixXd K = ring_kernel_matrix(curve);
  CHECK((K - K.transpose()).cwiseAbs().maxCoeff() <= 1e-10 * K.cwiseAbs().maxCoeff());
  CHECK(K.diagonal().cwiseAbs().maxCoeff() == 0.0);
  // Area-weighted collocation matrix is symmetric for well-separated panels.
  const Eigen::MatrixXd A = collocation_matrix(curve);
  const Eigen::VectorXd w = panel_areas(curve);
  for (int i = 0; i < 64; i += 7) {
    for (int j = i + 20; j < 64; j += 5) {
      CHECK(A(i, j) * w(i) == doctest::Approx(A(j, i) * w(j)).epsilon(0.02));
    }
  }
}

TEST_CASE("generating curves") {
  const GeneratingCurve s = generating_curve(Sphere{2.0}, 200);
  CHECK(s.panel_count() == 200);
  CHECK(s.equivalent_radius() == doctest::Approx(2.0).epsilon(1e-4));
  CHECK(s.arc_length() == doctest::Approx(2.0 * pi).epsilon(1e-4));
  const GeneratingCurve e = generating_curve(ProlateSpheroid{1.0, 4.0}, 400);
  CHECK(e.enclosed_volume() == doctest::Approx(4.0 / 3.0 * pi * 2.0).epsilon(1e-4));
  const GeneratingCurve cyl = generating_curve(CappedCylinder{1.0, 10.0}, 300);
  CHECK(cyl.enclosed_volume() == doctest::Approx(pi * 8.0 + 4.0 / 3.0 * pi).epsilon(1e-3));
  CHECK(panel_areas(cyl).sum() == doctest::Approx(2.0 * pi * 8.0 + 4.0 * pi).epsilon(1e-3));
  CHECK(e.scaled(2.0).equivalent_radius() == doctest::Approx(2.0 * e.equivalent_radius()).epsilon(1e-14));
  CHECK(e.translated(5.0).enclosed_volume() == doctest::Approx(e.enclosed_volume()).epsilon(1e-12));
  CHECK(e.resampled(100).panel_count() == 100);
  CHECK_THROWS_AS(generating_curve(Sphere{1.0}, 8), DomainError);
  CHECK_THROWS_AS(generating_curve(ProlateSpheroid{1.0, 1.0}, 100), DomainError);
  CHECK_THROWS_AS(GeneratingCurve({{0, 0}, {1, 0}}), DomainError);
  CHECK_THROWS_AS(GeneratingCurve({{1, 0}, {-1, 1}, {1, 1}, {-1, 0}}), DomainError);
}

TEST_CASE("curve file parsing") {
  auto ok = text("# sphere-ish\n1 0\n0.7 0.7\n\n0 1  # equator\n-0.7 0.7\n-1 0\n");
  const GeneratingCurve c = GeneratingCurve::parse(ok);
  CHECK(c.panel_count() == 4);

  auto repeated = text("1 0\n0.7 0.7\n0.7 0.7\n-1 0\n");
  try {
    GeneratingCurve::parse(repeated);
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  auto words = text("1 0\n0.5 abc\n-1 0\n");
  CHECK_THROWS_WITH_AS(GeneratingCurve::parse(words), doctest::Contains("line 2"), ParseError);
  auto extra = text("1 0\n0 1 2\n-1 0\n");
  CHECK_THROWS_WITH_AS(GeneratingCurve::parse(extra), doctest::Contains("line 2"), ParseError);
  auto off_axis = text("1 0.1\n0 1\n-1 0\n");
  CHECK_THROWS_WITH_AS(GeneratingCurve::parse(off_axis), doctest::Contains("line 1"), ParseError);
  auto negative = text("1 0\n0 -1\n-1 0\n");
  CHECK_THROWS_AS(GeneratingCurve::parse(negative), ParseError);
  auto short_file = text("1 0\n-1 0\n");
  CHECK_THROWS_AS(GeneratingCurve::parse(short_file), ParseError);
}

TEST_CASE("sphere capacitance") {
  const PhysicalConstants c;
  const PanelSolution sol = solve_unit_potential(generating_curve(Sphere{1.0}, 200));
  CHECK(sol.capacitance_length == doctest::Approx(1.0).epsilon(0.005));
  CHECK(sol.capacitance_length == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(sol.density.minCoeff() > 0.0);
  // Uniform density on the sphere: sigma = 1/(4 pi R^2) in C/(4 pi eps0) units scaled by 4 pi.
  const double mean = sol.density.mean();
  CHECK((sol.density.array() - mean).abs().maxCoeff() < 1e-3 * mean);
  CHECK(capacitance(Sphere{2e-6}, 200, c) == doctest::Approx(4.0 * pi * c.eps0 * 2e-6).epsilon(0.005));
}

TEST_CASE("spheroid and cylinder capacitance") {
  const double exact = spheroid_capacitance_length(1.0, 4.0);
  const GeneratingCurve e = generating_curve(ProlateSpheroid{1.0, 4.0}, 400);
  CHECK(solve_unit_potential(e).capacitance_length == doctest::Approx(exact).epsilon(0.01));
  CHECK(solve_unit_potential(e).capacitance_length == doctest::Approx(exact).epsilon(1e-4));
  const double slender = 0.5 * 100.0 / (std::log(200.0) - 1.0);
  const double cyl = solve_unit_potential(generating_curve(CappedCylinder{1.0, 100.0}, 400)).capacitance_length;
  CHECK(cyl == doctest::Approx(slender).epsilon(0.10));
}

TEST_CASE("grid convergence is monotone") {
  for (const ShapeFamily& shape : {ShapeFamily{Sphere{1.0}}, ShapeFamily{ProlateSpheroid{1.0, 4.0}},
                                   ShapeFamily{CappedCylinder{1.0, 20.0}}}) {
    std::vector<double> C;
    for (int n : {50, 100, 200, 400}) C.push_back(solve_unit_potential(generating_curve(shape, n)).capacitance_length);
    for (std::size_t i = 0; i + 2 < C.size(); ++i) {
      CHECK(std::abs(C[i + 2] - C[i + 1]) < std::abs(C[i + 1] - C[i]));
    }
  }
}

TEST_CASE("curve file and shape family agree") {
  const GeneratingCurve g = generating_curve(ProlateSpheroid{1.0, 4.0}, 200);
  std::ostringstream os;
  os.precision(17);
  for (const auto& p : g.nodes()) os << p.z << ' ' << p.rho << '\n';
  std::istringstream is(os.str());
  const GeneratingCurve back = GeneratingCurve::parse(is);
  CHECK(solve_unit_potential(back).capacitance_length ==
        doctest::Approx(solve_unit_potential(g).capacitance_length).epsilon(1e-14));
}

TEST_CASE("equilibrium energy") {
  const PhysicalConstants c;
  const double Q = 1e-13, R = 1e-5;
  CHECK(equilibrium_energy(Sphere{R}, Q, 200, c) == doctest::Approx(Q * Q / (8 * pi * c.eps0 * R)).epsilon(0.005));
  // Enlarging the conductor lowers the energy.
  CHECK(equilibrium_energy(ProlateSpheroid{R, 4 * R}, Q, 400, c) < equilibrium_energy(Sphere{R}, Q, 400, c));
  CHECK(capacitance(ProlateSpheroid{R, 4 * R}, 400, c) > capacitance(Sphere{R}, 400, c));
}

TEST_CASE("sphere with bump against the split-charge bound") {
  const DropletSpec spec = droplet_at_fraction(10e-6, water(), 0.5);
  const SpheroidProtrusion p{1e-9, 0.4e-6};
  const ChargeOptimum o = optimize_protrusion_charge(spec, p, 0.0);
  const double bound_el = o.energy - o.parts.surf;
  const double bem = equilibrium_energy(SphereWithSpheroidBump{spec.radius_R, p.r, p.h}, spec.charge_Q, 800);
  CHECK(bem <= bound_el * 1.02);
  CHECK(bem > 0.9 * bound_el);
  const PanelSolution sol = solve_unit_potential(generating_curve(SphereWithSpheroidBump{1.0, 0.01, 0.1}, 400));
  CHECK(sol.density.minCoeff() > 0.0);
  CHECK(sol.capacitance_length > 1.0);
  CHECK_THROWS_AS(generating_curve(SphereWithSpheroidBump{1.0, 0.01, 0.1, 10.0}, 400), DomainError);
}
