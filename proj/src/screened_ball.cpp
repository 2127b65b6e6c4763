#include "chargedrop/screened_ball.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "chargedrop/errors.hpp"
#include "chargedrop/roots.hpp"

namespace chargedrop {

double RadialChargeProfile::total_charge() const {
  double q = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double a = rho[i - 1] * grid[i - 1] * grid[i - 1];
    const double b = rho[i] * grid[i] * grid[i];
    q += 0.5 * (a + b) * (grid[i] - grid[i - 1]);
  }
  return 4.0 * pi * q;
}

std::vector<double> screened_grid(double rd_over_R, const ScreenedGridOptions& opt) {
  const int n = opt.n_grid;
  if (n < 64) throw DomainError("screened ball needs n_grid >= 64");
  if (!(rd_over_R > 0.0)) throw DomainError("Debye radius must be positive");
  double beta = 0.0;
  if (opt.stretch) {
    beta = *opt.stretch;
    if (!(beta >= 0.0)) throw DomainError("grid stretch must be non-negative");
  } else if (1.0 / n > 0.25 * rd_over_R) {
    // last cell sinh(beta/n)/sinh(beta) equal to rd/4
    auto last_cell = [n, rd_over_R](double b) {
      return std::sinh(b / n) / std::sinh(b) - 0.25 * rd_over_R;
    };
    if (last_cell(700.0) > 0.0) {
      throw DomainError("screened grid cannot resolve the boundary layer; increase n_grid");
    }
    beta = bisect(last_cell, 1e-8, 700.0, 1e-12);
  }
  std::vector<double> x(n + 1);
  for (int k = 0; k <= n; ++k) {
    const double xi = double(k) / n;
    x[k] = beta < 1e-8 ? xi : 1.0 - std::sinh(beta * (1.0 - xi)) / std::sinh(beta);
  }
  x.front() = 0.0;
  x.back() = 1.0;
  return x;
}

ScreenedBallSolution minimize_screened_ball(const DropletSpec& spec, double debye_radius,
                                            const ScreenedGridOptions& opt,
                                            const PhysicalConstants& c) {
  spec.validate();
  c.validate();
  const double R = spec.radius_R;
  const double lam = debye_radius / R;
  const std::vector<double> x = screened_grid(lam, opt);
  const int n = opt.n_grid;

  // Trapezoid weights; node 0 sits at s = 0 and carries no charge weight.
  Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd s(n);
  for (int k = 1; k <= n; ++k) {
    s(k - 1) = x[k];
    const double left = 0.5 * (x[k] - x[k - 1]);
    const double right = k < n ? 0.5 * (x[k + 1] - x[k]) : 0.0;
    w(k - 1) = left + right;
  }

  // Unknowns u = sqrt(w) s rho make the penalty the identity:
  //   E / (Q^2/(eps0 R)) = 2 pi u^T B u + 2 pi lam^2 u^T u,  B_ij = sqrt(w_i w_j) min(s_i, s_j),
  //   constraint 4 pi sum sqrt(w) s u = 1.
  const Eigen::VectorXd sw = w.cwiseSqrt();
  Eigen::MatrixXd B(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) B(i, j) = sw(i) * sw(j) * std::min(s(i), s(j));
  }
  Eigen::MatrixXd H = 4.0 * pi * B;
  H.diagonal().array() += 4.0 * pi * lam * lam;
  const Eigen::VectorXd cvec = 4.0 * pi * sw.cwiseProduct(s);

  const Eigen::LDLT<Eigen::MatrixXd> ldlt(H);
  ScreenedBallSolution sol;
  sol.rcond = ldlt.rcond();
  if (ldlt.info() != Eigen::Success || !(sol.rcond > 1e-12)) {
    std::ostringstream msg;
    msg << "screened-ball system ill-conditioned (reciprocal condition " << sol.rcond
        << "); use a finer or coarser grid";
    throw NumericalError(msg.str());
  }
  const Eigen::VectorXd y = ldlt.solve(cvec);
  const double mu = 1.0 / cvec.dot(y);
  const Eigen::VectorXd u = mu * y;
  const Eigen::VectorXd rho = u.cwiseQuotient(sw.cwiseProduct(s));

  const double es_scaled = 2.0 * pi * u.dot(B * u);
  const double ent_scaled = 2.0 * pi * lam * lam * u.squaredNorm();

  // Discrete potential v_k = sum_j w_j s_j rho_j min(s_j, s_k) / s_k (units Q/(eps0 R)).
  Eigen::VectorXd v(n);
  const Eigen::VectorXd wsr = w.cwiseProduct(s).cwiseProduct(rho);
  for (int k = 0; k < n; ++k) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j) acc += wsr(j) * std::min(s(j), s(k));
    v(k) = acc / s(k);
  }

  // Field-energy form: (1/(8 pi)) int q^2/s^2 ds + 1/(8 pi), trapezoid on the grid.
  double field_form = 1.0 / (8.0 * pi);
  {
    double q = 0.0;
    double g_prev = 0.0;  // rho s^2
    double f_prev = 0.0;  // q^2 / s^2
    double s_prev = 0.0;
    for (int k = 0; k < n; ++k) {
      const double g = rho(k) * s(k) * s(k);
      const double ds = s(k) - s_prev;
      q += 4.0 * pi * 0.5 * (g_prev + g) * ds;
      const double f = q * q / (s(k) * s(k));
      field_form += 0.5 * (f_prev + f) * ds / (8.0 * pi);
      g_prev = g;
      f_prev = f;
      s_prev = s(k);
    }
  }

  const double Q = spec.charge_Q;
  const double e_unit = Q * Q / (c.eps0 * R);
  const double v_unit = Q / (c.eps0 * R);
  const double rho_unit = Q / (R * R * R);

  sol.debye_radius = debye_radius;
  sol.profile.grid.resize(n + 1);
  sol.profile.rho.resize(n + 1);
  sol.potential.resize(n + 1);
  for (int k = 0; k < n; ++k) {
    sol.profile.grid[k + 1] = R * s(k);
    sol.profile.rho[k + 1] = rho_unit * rho(k);
    sol.potential[k + 1] = v_unit * v(k);
  }
  // rho is even in s; extrapolate c0 + c1 s^2 through the first two nodes.
  const double s1 = s(0) * s(0);
  const double s2 = s(1) * s(1);
  const double rho0 = (rho(0) * s2 - rho(1) * s1) / (s2 - s1);
  sol.profile.grid[0] = 0.0;
  sol.profile.rho[0] = rho_unit * rho0;
  sol.potential[0] = v_unit * (mu - lam * lam * rho0);
  sol.multiplier = v_unit * mu;

  sol.energy.electrostatic = e_unit * es_scaled;
  sol.energy.entropic = e_unit * ent_scaled;
  sol.energy.total = sol.energy.electrostatic + sol.energy.entropic;
  sol.energy.form_discrepancy = (field_form - es_scaled) / es_scaled;
  return sol;
}

ScreenedBallSolution minimize_screened_ball(const DropletSpec& spec, int n_grid,
                                            const PhysicalConstants& c) {
  return minimize_screened_ball(spec, debye_radius(spec.liquid, c), ScreenedGridOptions{n_grid, {}},
                                c);
}

double screened_vs_conductor_gap(const DropletSpec& spec, double debye_radius,
                                 const ScreenedGridOptions& opt, const PhysicalConstants& c) {
  if (!(spec.charge_Q > 0.0)) throw DomainError("screened gap requires Q > 0");
  const ScreenedBallSolution sol = minimize_screened_ball(spec, debye_radius, opt, c);
  const double conductor =
      spec.charge_Q * spec.charge_Q / (8.0 * pi * c.eps0 * spec.radius_R);
  return (sol.energy.electrostatic - conductor) / conductor;
}

double screened_vs_conductor_gap(const DropletSpec& spec, int n_grid, const PhysicalConstants& c) {
  return screened_vs_conductor_gap(spec, debye_radius(spec.liquid, c),
                                   ScreenedGridOptions{n_grid, {}}, c);
}

}  // namespace chargedrop
