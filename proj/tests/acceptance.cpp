// Acceptance checks: one line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "chargedrop/barrier.hpp"
#include "chargedrop/bem.hpp"
#include "chargedrop/cli.hpp"
#include "chargedrop/perturbation.hpp"
#include "chargedrop/screened_ball.hpp"
#include "chargedrop/shapes.hpp"

using namespace chargedrop;
namespace fs = std::filesystem;

namespace {

const double e0 = 1.602176634e-19;
const double eps0 = 8.8541878128e-12;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

struct Checker {
  bool ok = true;
  std::ostringstream msg;
  void expect(bool cond, const std::string& what) {
    if (!msg.str().empty()) msg << "; ";
    msg << what << (cond ? "" : " [FAILED]");
    ok = ok && cond;
  }
  Outcome done() const { return {ok, msg.str()}; }
};

DropletSpec water_half() { return droplet_at_fraction(10e-6, water(), 0.5); }

Outcome fig2() {
  Checker c;
  const auto t0 = std::chrono::steady_clock::now();
  const DropletSpec spec = water_half();
  const BarrierScanResult res = scan_barrier(spec, 1e-9, 2.2e-9, 1.5e-6, 200, 0.0);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double kT = in_kT(res.deltaE_max, spec.liquid);
  c.expect(kT >= 3e3 && kT <= 3e4, fmt("dE_max = %.4g kT", kT));
  c.expect(res.h_max >= 0.1e-6 && res.h_max <= 1.6e-6, fmt("h_max = %.4g um", res.h_max * 1e6));
  const double q = res.q_at_hmax / e0;
  c.expect(q >= 65 && q <= 260, fmt("q = %.4g e", q));
  c.expect(res.interior_maximum && res.h0.has_value(), "interior maximum, sign change at h0");
  c.expect(secs < 10.0, fmt("%.3g s", secs));
  return c.done();
}

Outcome field() {
  Checker c;
  const DropletSpec spec = water_half();
  const BarrierScanResult zero = scan_barrier(spec, 1e-9, 2.2e-9, 1.5e-6, 200, 0.0);
  const BarrierScanResult with = scan_barrier(spec, 1e-9, 2.2e-9, 1.5e-6, 200, 3e5);
  const double ratio = with.deltaE_max / zero.deltaE_max;
  c.expect(ratio >= 0.5 * 0.65 && ratio <= 0.5 * 1.35, fmt("ratio = %.4g (target 0.5 +- 35%%)", ratio));
  return c.done();
}

Outcome methanol_case() {
  Checker c;
  const DropletSpec spec = droplet_at_fraction(100e-9, methanol(), 0.5);
  const BarrierScanResult res = scan_barrier(spec, 1e-9, 2.2e-9, 100e-9, 200, 0.0);
  const double kT = in_kT(res.deltaE_max, spec.liquid);
  c.expect(kT >= 50 && kT <= 2000, fmt("dE_max = %.4g kT at Q = Q_R/2", kT));
  c.expect(res.interior_maximum, "interior maximum");
  return c.done();
}

Outcome perturbation_suite() {
  Checker c;
  const DropletSpec spec = water_half();
  const double R = spec.radius_R;
  bool neg = true;
  for (double t : {0.002, 0.005, 0.01, 0.05}) neg = neg && delta_E0_bracket(spec, t * R).sign() < 0;
  c.expect(neg, "bracket < 0 at delta/R in {0.002, 0.005, 0.01, 0.05}");
  const EnergyBracket half = delta_E0_bracket(spec, 0.5 * R);
  c.expect(half.sign() > 0, fmt("bracket(0.5) = %.4g > 0", half.value));
  const double ds = instability_threshold_delta(spec, 1e-9);
  const bool bracketed = delta_E0_bracket(spec, ds * (1 - 2e-9)).sign() < 0 &&
                         delta_E0_bracket(spec, ds * (1 + 2e-9)).sign() > 0;
  c.expect(bracketed, fmt("delta*/R = %.10g bracketed to 1e-9", ds / R));
  const double ds1 = instability_threshold_delta(droplet_at_fraction(1e-6, water(), 0.5), 1e-9) / 1e-6;
  c.expect(std::abs(ds1 - ds / R) <= 1e-9 * ds1, fmt("R = 1 um gives %.10g", ds1));
  return c.done();
}

Outcome tentacle_suite() {
  Checker c;
  const DropletSpec spec = water_half();
  const double R = spec.radius_R;
  double first_negative = 0.0;
  for (int i = 0; i <= 2000 && first_negative == 0.0; ++i) {
    const double h = R * std::pow(100.0, i / 2000.0);
    if (tentacle_is_valid(spec, h) && tentacle_energy_deficit(spec, h) < 0.0) first_negative = h;
  }
  c.expect(first_negative > 0.0, fmt("deficit < 0 from h/R = %.4g", first_negative / R));
  const double h = 1e4 * R;
  const double e = tentacle_energy_bound(spec, optimal_tentacle_radius(spec, h), h);
  const double surface = 4 * pi * spec.liquid.sigma * R * R;
  c.expect(std::abs(e / surface - 1) < 0.01, fmt("E(1e4 R)/(4 pi sigma R^2) - 1 = %.3g", e / surface - 1));
  double worst = 0.0;
  for (double hr : {10.0, 100.0, 1e3, 1e4}) {
    const double hh = hr * R;
    const double r = optimal_tentacle_radius(spec, hh);
    auto E = [&](double rr) { return tentacle_energy_bound(spec, rr, hh); };
    const double dr = 1e-4 * r;
    const double slope = (E(r + dr) - E(r - dr)) / (2 * dr);
    worst = std::max(worst, std::abs(slope) / (2 * pi * spec.liquid.sigma * hh));
  }
  c.expect(worst < 1e-6, fmt("stationarity residual %.2g", worst));
  return c.done();
}

Outcome capacitance_suite() {
  Checker c;
  const double sphere = solve_unit_potential(generating_curve(Sphere{1.0}, 200)).capacitance_length;
  c.expect(std::abs(sphere - 1) < 0.005, fmt("sphere err %.2e", sphere - 1));
  const double exact = spheroid_capacitance_length(1.0, 4.0);
  const double sph = solve_unit_potential(generating_curve(ProlateSpheroid{1.0, 4.0}, 400)).capacitance_length;
  c.expect(std::abs(sph / exact - 1) < 0.01, fmt("spheroid err %.2e", sph / exact - 1));
  const double slender = 0.5 * 100.0 / (std::log(200.0) - 1.0);
  const double cyl = solve_unit_potential(generating_curve(CappedCylinder{1.0, 100.0}, 400)).capacitance_length;
  c.expect(std::abs(cyl / slender - 1) < 0.10, fmt("cylinder vs slender %.3g", cyl / slender - 1));
  bool monotone = true;
  for (const ShapeFamily& s : {ShapeFamily{Sphere{1.0}}, ShapeFamily{ProlateSpheroid{1.0, 4.0}},
                               ShapeFamily{CappedCylinder{1.0, 100.0}}}) {
    std::vector<double> C;
    for (int n : {50, 100, 200, 400, 800}) C.push_back(solve_unit_potential(generating_curve(s, n)).capacitance_length);
    for (std::size_t i = 0; i + 2 < C.size(); ++i) {
      monotone = monotone && std::abs(C[i + 2] - C[i + 1]) < std::abs(C[i + 1] - C[i]);
    }
  }
  c.expect(monotone, "successive differences shrink for all three shapes");
  return c.done();
}

Outcome screened_suite() {
  Checker c;
  const DropletSpec spec = water_half();
  const double R = spec.radius_R, Q = spec.charge_Q;
  const double cond = Q * Q / (8 * pi * eps0 * R);
  const double unif = 3 * Q * Q / (20 * pi * eps0 * R);
  auto es = [&](double t) {
    return minimize_screened_ball(spec, t * R, ScreenedGridOptions{512, {}}).energy.electrostatic;
  };
  c.expect(std::abs(es(0.01) / cond - 1) < 0.03, fmt("rD/R=0.01: %.3g vs conductor", es(0.01) / cond - 1));
  c.expect(std::abs(es(100) / unif - 1) < 0.01, fmt("rD/R=100: %.3g vs uniform", es(100) / unif - 1));
  const ScreenedBallSolution sol = minimize_screened_ball(spec, 0.1 * R, ScreenedGridOptions{512, {}});
  const double l = 0.1;
  const double A = Q / (4 * pi * (l * std::cosh(1 / l) - l * l * std::sinh(1 / l))) / (R * R * R);
  double worst = 0.0;
  for (std::size_t i = 0; i < sol.profile.grid.size(); ++i) {
    const double x = sol.profile.grid[i] / R;
    if (x < 0.05) continue;
    const double ref = A * std::sinh(x / l) / x;
    worst = std::max(worst, std::abs(sol.profile.rho[i] / ref - 1));
  }
  c.expect(worst < 0.005, fmt("profile err %.2e at rD/R=0.1", worst));
  bool inside = true;
  for (double t : {0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0, 100.0}) {
    const double e = es(t);
    inside = inside && e >= cond * (1 - 1e-12) && e <= unif * (1 + 1e-12);
  }
  c.expect(inside, "conductor <= E_el <= uniform for 11 Debye radii");
  return c.done();
}

Outcome volume_suite() {
  Checker c;
  const double R = 1.0;
  for (double t : {0.2, 0.3}) {
    const PerturbationParams p = solved(PerturbationParams::make(R, t * R));
    const double h = *p.depression_depth_h;
    const double V = 4.0 / 3.0 * pi;
    // Direct volume: midpoint rule on pieces between the support breakpoints.
    const InnerRadii ir = p.radii();
    const double cuts[] = {0.0, 2 * std::asin(0.5 * ir.r), 2 * std::asin(ir.r), 2 * std::asin(0.25 * ir.rprime),
                           2 * std::asin(0.5 * ir.rprime), pi};
    double vol = 0.0;
    const int m = 200000;
    for (int k = 0; k < 5; ++k) {
      const double a = cuts[k], b = cuts[k + 1];
      for (int i = 0; i < m; ++i) {
        const double th = a + (b - a) * (i + 0.5) / m;
        const double d = phi_delta(th, p);
        vol += (d * (3 + 3 * d + d * d) / 3 + 1.0 / 3) * 2 * pi * std::sin(th) * (b - a) / m;
      }
    }
    c.expect(std::abs(vol / V - 1) < 1e-10, fmt("delta/R=%.1f", t) + fmt(": |V-V0|/V0 = %.1e", std::abs(vol / V - 1)));

    const double support = p.support_angle();
    const int n = 10000;
    const double dth = 1.5 * support / (n - 1);
    bool contained = true, bounded = true;
    double max_step = 0.0, max_curv = 0.0;
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) {
      const double th = i * dth;
      v[i] = phi_delta(th, p);
      if (th > support && v[i] != 0.0) contained = false;
      if (v[i] > t * R * (1 + 1e-15) || v[i] < -h * (1 + 1e-15)) bounded = false;
    }
    for (int i = 0; i + 1 < n; ++i) max_step = std::max(max_step, std::abs(v[i + 1] - v[i]));
    for (int i = 1; i + 1 < n; ++i) max_curv = std::max(max_curv, std::abs(v[i + 1] - 2 * v[i] + v[i - 1]));
    // Smooth sampled function: first differences O(dth), second differences O(dth^2).
    // The spike transition spans chord r..2r, about ir.r/(R dth) samples.
    const double samples = ir.r / (R * dth);
    const bool smooth = max_step < 4.0 * t / samples && max_curv < 16.0 * t / (samples * samples);
    c.expect(contained, "phi = 0 beyond the support angle");
    c.expect(bounded, "-h <= phi <= delta");
    c.expect(smooth, fmt("max step/delta %.2e", max_step / t) + fmt(", max 2nd diff/delta %.2e", max_curv / t));
  }
  return c.done();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string data_lines(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line)) {
    if (line.rfind("#", 0) != 0) out += line + "\n";
  }
  return out;
}

Outcome determinism() {
  Checker c;
  const std::vector<std::vector<std::string>> runs = {
      {"rayleigh"},
      {"barrier-scan"},
      {"barrier-scan", "--field", "3e5", "--mode", "post-hoc"},
      {"tentacle"},
      {"perturbation"},
      {"capacitance", "--shape", "spheroid"},
      {"capacitance", "--shape", "bump", "--R", "1", "--r", "0.01", "--h", "0.1", "--panels", "300"},
      {"screened"},
  };
  int same = 0, total = 0;
  for (const auto& args : runs) {
    for (const std::string format : {"csv", "json"}) {
      const fs::path a = fs::temp_directory_path() / ("chargedrop_accept_a." + format);
      const fs::path b = fs::temp_directory_path() / ("chargedrop_accept_b." + format);
      std::ostringstream sink, err;
      std::vector<std::string> first = args;
      first.insert(first.end(), {"--format", format, "--out", a.string()});
      ++total;
      if (run_cli(first, sink, err) != 0) continue;
      if (run_cli({args[0], "--config", a.string(), "--out", b.string()}, sink, err) != 0) continue;
      const std::string ta = slurp(a), tb = slurp(b);
      bool eq = false;
      if (format == "csv") {
        eq = data_lines(ta) == data_lines(tb);
      } else {
        const auto ja = nlohmann::json::parse(ta), jb = nlohmann::json::parse(tb);
        eq = ja["records"] == jb["records"] && ja["metadata"]["config"] == jb["metadata"]["config"] &&
             ja["metadata"]["spec_hash"] == jb["metadata"]["spec_hash"];
      }
      same += eq ? 1 : 0;
      fs::remove(a);
      fs::remove(b);
    }
  }
  c.expect(same == total, std::to_string(same) + "/" + std::to_string(total) +
                              " runs reproduced bit-identically from their headers");
  return c.done();
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"barrier maximum, water drop", fig2},
      {"external field lowers the barrier", field},
      {"methanol drop barrier", methanol_case},
      {"perturbation sign and threshold", perturbation_suite},
      {"tentacle deficit and limit", tentacle_suite},
      {"boundary element capacitance", capacitance_suite},
      {"screened ball limits and profile", screened_suite},
      {"perturbed volume and support", volume_suite},
      {"bit-reproducible CLI runs", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
    failed += o.pass ? 0 : 1;
  }
  return failed ? 1 : 0;
}
