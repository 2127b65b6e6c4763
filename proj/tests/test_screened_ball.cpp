#include <doctest.h>

#include <cmath>
#include <random>

#include "chargedrop/errors.hpp"
#include "chargedrop/screened_ball.hpp"

using namespace chargedrop;

namespace {

const double eps0 = 8.8541878128e-12;

DropletSpec spec_half() { return droplet_at_fraction(10e-6, water(), 0.5); }

double conductor(const DropletSpec& s) { return s.charge_Q * s.charge_Q / (8 * pi * eps0 * s.radius_R); }
double uniform(const DropletSpec& s) { return 1.2 * conductor(s); }

ScreenedBallSolution solve(const DropletSpec& s, double rd_over_R, int n = 512) {
  return minimize_screened_ball(s, rd_over_R * s.radius_R, ScreenedGridOptions{n, {}});
}

// Stationary profile of the screened functional, normalized by the charge
// constraint: rho = A sinh(s/l)/s with l = r_D.
double analytic_rho(double s, double Q, double l) {
  const double A = Q / (4 * pi * (l * std::cosh(1.0 / l) - l * l * std::sinh(1.0 / l)));
  return s > 0 ? A * std::sinh(s / l) / s : A / l;
}

}  // namespace

TEST_CASE("charge constraint and residual") {
  const DropletSpec s = spec_half();
  const ScreenedBallSolution sol = solve(s, 0.1);
  CHECK(sol.profile.total_charge() == doctest::Approx(s.charge_Q).epsilon(1e-10));
  CHECK(sol.energy.total == doctest::Approx(sol.energy.electrostatic + sol.energy.entropic).epsilon(1e-14));
  CHECK(sol.energy.form_discrepancy < 1e-3);
  CHECK(sol.rcond > 1e-12);
  CHECK(sol.debye_radius == doctest::Approx(1e-6).epsilon(1e-14));
  CHECK(sol.profile.grid.front() == 0.0);
  CHECK(sol.profile.grid.back() == doctest::Approx(s.radius_R).epsilon(1e-15));
}

TEST_CASE("analytic profile") {
  const DropletSpec s = spec_half();
  const double R = s.radius_R;
  const ScreenedBallSolution sol = solve(s, 0.1);
  const double Qbar = s.charge_Q / (R * R * R);  // rho in units of Q/R^3
  double worst = 0.0;
  for (std::size_t i = 0; i < sol.profile.grid.size(); ++i) {
    const double x = sol.profile.grid[i] / R;
    if (x < 0.05) continue;
    const double ref = analytic_rho(x, 1.0, 0.1) * Qbar;
    worst = std::max(worst, std::abs(sol.profile.rho[i] - ref) / ref);
  }
  CHECK(worst < 0.005);
  // The Euler-Lagrange multiplier is the potential plus the penalty term, constant in s.
  const double lambda2 = 0.01 * R * R;
  for (std::size_t i = 0; i < sol.profile.grid.size(); i += 37) {
    const double lhs = sol.potential[i] + lambda2 * sol.profile.rho[i] / eps0;
    CHECK(lhs == doctest::Approx(sol.multiplier).epsilon(1e-8));
  }
}

TEST_CASE("limits") {
  const DropletSpec s = spec_half();
  const ScreenedBallSolution weak = solve(s, 100.0);
  CHECK(weak.energy.electrostatic == doctest::Approx(uniform(s)).epsilon(0.01));
  const double mean = s.charge_Q / s.volume();
  double l2 = 0.0, norm = 0.0;
  const auto& g = weak.profile.grid;
  for (std::size_t i = 0; i + 1 < g.size(); ++i) {
    const double w = (g[i + 1] * g[i + 1] * g[i + 1] - g[i] * g[i] * g[i]) / 3.0;
    const double d = 0.5 * (weak.profile.rho[i] + weak.profile.rho[i + 1]) - mean;
    l2 += d * d * w;
    norm += mean * mean * w;
  }
  CHECK(std::sqrt(l2 / norm) < 0.01);
  const ScreenedBallSolution strong = solve(s, 0.01);
  CHECK(strong.energy.electrostatic == doctest::Approx(conductor(s)).epsilon(0.03));
}

TEST_CASE("energy bracketed by conductor and uniform") {
  const DropletSpec s = spec_half();
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 25; ++i) {
    const double t = std::pow(10.0, u(rng));
    const double es = solve(s, t, 256).energy.electrostatic;
    CHECK(es >= conductor(s) * (1 - 1e-12));
    CHECK(es <= uniform(s) * (1 + 1e-12));
  }
}

TEST_CASE("gap to the conductor") {
  const DropletSpec s = spec_half();
  const ScreenedGridOptions opt{512, {}};
  double prev = 1.0;
  for (double t : {0.2, 0.1, 0.05}) {
    const double gap = screened_vs_conductor_gap(s, t * s.radius_R, opt);
    CHECK(gap >= 0.0);
    CHECK(gap < prev);
    prev = gap;
  }
  CHECK(screened_vs_conductor_gap(s, 1e3 * s.radius_R, opt) == doctest::Approx(0.2).epsilon(1e-3));
  CHECK_THROWS_AS(screened_vs_conductor_gap(droplet_at_fraction(1e-5, water(), 0.0), 1e-6, opt), DomainError);
}

TEST_CASE("grid refinement converges monotonically") {
  const DropletSpec s = spec_half();
  std::vector<double> E;
  for (int n : {64, 128, 256, 512, 1024}) {
    E.push_back(minimize_screened_ball(s, 0.1 * s.radius_R, ScreenedGridOptions{n, 3.0}).energy.total);
  }
  for (std::size_t i = 0; i + 1 < E.size(); ++i) CHECK(E[i + 1] >= E[i]);
  for (std::size_t i = 0; i + 2 < E.size(); ++i) {
    CHECK(std::abs(E[i + 2] - E[i + 1]) < std::abs(E[i + 1] - E[i]));
  }
}

TEST_CASE("grid and options") {
  const std::vector<double> g = screened_grid(0.01, ScreenedGridOptions{128, {}});
  CHECK(g.size() == 129);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 1.0);
  CHECK(g.back() - g[g.size() - 2] <= 0.25 * 0.01 * (1 + 1e-12));
  for (std::size_t i = 0; i + 1 < g.size(); ++i) CHECK(g[i + 1] > g[i]);
  CHECK_THROWS_AS(screened_grid(0.1, ScreenedGridOptions{16, {}}), DomainError);
  CHECK_THROWS_AS(minimize_screened_ball(spec_half(), -1.0, ScreenedGridOptions{}), DomainError);
  CHECK_NOTHROW(minimize_screened_ball(spec_half(), 128));
}
