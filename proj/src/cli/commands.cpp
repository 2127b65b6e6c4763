#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>

#include "chargedrop/barrier.hpp"
#include "chargedrop/bem.hpp"
#include "chargedrop/cli.hpp"
#include "chargedrop/errors.hpp"
#include "chargedrop/perturbation.hpp"
#include "chargedrop/screened_ball.hpp"
#include "chargedrop/shapes.hpp"
#include "config.hpp"
#include "output.hpp"

namespace chargedrop {

using cli::Report;
using cli::RunConfig;
using cli::UsageError;
using cli::exact;

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

struct KeyHelp {
  const char* key;
  const char* help;
};

const KeyHelp key_help[] = {
    {"R", "drop radius (m); sphere radius for capacitance"},
    {"sigma", "surface tension (N/m)"},
    {"temp", "temperature (K)"},
    {"epsilon-r", "relative permittivity"},
    {"n0", "free-ion density per species (1/m^3)"},
    {"charge-fraction", "Q / Q_R"},
    {"r", "protrusion radius (m); equatorial radius for capacitance"},
    {"h", "full length of the capacitance shape"},
    {"h-min", "lower end of the height sweep (m)"},
    {"h-max", "upper end of the height sweep (m)"},
    {"n", "number of sweep samples"},
    {"field", "external field magnitude (V/m)"},
    {"mode", "field handling: in-minimization | post-hoc"},
    {"deltas", "comma-separated delta/R values"},
    {"rd-over-R", "comma-separated Debye radius / R values"},
    {"n-grid", "radial grid nodes"},
    {"panels", "boundary panels"},
    {"shape", "sphere | spheroid | cylinder | bump | curve"},
    {"fillet-ratio", "fillet radius / r for the bump shape"},
    {"curve", "two-column 'z rho' generating curve file"},
    {"format", "csv | json"},
    {"out", "output path (default: stdout)"},
};

using Defaults = std::vector<std::pair<std::string, std::string>>;

Defaults with_common(Defaults extra) {
  Defaults d = {{"R", "1e-5"},           {"sigma", "0.073"}, {"temp", "293"},
                {"epsilon-r", "80"},     {"n0", "6.02e25"},  {"charge-fraction", "0.5"},
                {"format", "csv"},       {"out", ""}};
  d.insert(d.end(), extra.begin(), extra.end());
  return d;
}

struct Command {
  std::string name;
  std::string description;
  Defaults defaults;
  std::function<Report(const RunConfig&)> run;
};

Liquid liquid_of(const RunConfig& cfg) {
  Liquid l;
  l.sigma = cfg.number("sigma");
  l.temperature = cfg.number("temp");
  l.epsilon_r = cfg.number("epsilon-r");
  l.ion_density_n0 = cfg.number("n0");
  return l;
}

DropletSpec spec_of(const RunConfig& cfg) {
  return droplet_at_fraction(cfg.number("R"), liquid_of(cfg), cfg.number("charge-fraction"));
}

double to_e(double q) { return q / PhysicalConstants{}.e_charge; }

std::string yes_no(bool b) { return b ? "true" : "false"; }

std::vector<double> log_grid(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi > lo)) throw DomainError("sweep range must satisfy 0 < min < max");
  if (n < 1) throw DomainError("sweep needs at least one sample");
  std::vector<double> g(static_cast<std::size_t>(n));
  if (n == 1) {
    g[0] = lo;
    return g;
  }
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int i = 0; i < n; ++i) g[std::size_t(i)] = std::exp(a + (b - a) * i / (n - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

FieldMode mode_of(const RunConfig& cfg) {
  const std::string& m = cfg.text("mode");
  if (m == "in-minimization") return FieldMode::in_minimization;
  if (m == "post-hoc") return FieldMode::post_hoc;
  throw UsageError("key 'mode' expects in-minimization or post-hoc, got '" + m + "'");
}

Report cmd_rayleigh(const RunConfig& cfg) {
  const DropletSpec spec = spec_of(cfg);
  const PhysicalConstants c{};
  const double R = spec.radius_R;
  const double QR = rayleigh_charge(R, spec.liquid.sigma, c);
  const double Q = spec.charge_Q;
  const double el_conductor = Q * Q / (8.0 * pi * c.eps0 * R);
  const double el_uniform = 3.0 * Q * Q / (20.0 * pi * c.eps0 * R);
  const double e_cond = ball_energy_conductor(spec, c);
  const double e_unif = ball_energy_uniform(spec, c);

  Report rep;
  rep.command = "rayleigh";
  rep.columns = {"Q_R_C",          "Q_C",           "Q_over_Q_R",       "Q_e",
                 "r_D_m",          "E_conductor_J", "E_conductor_kT",   "E_uniform_J",
                 "E_uniform_kT",   "E_el_conductor_J", "E_el_uniform_J", "E_surface_J"};
  rep.rows.push_back({QR, Q, Q / QR, to_e(Q), debye_radius(spec.liquid, c), e_cond,
                      in_kT(e_cond, spec.liquid, c), e_unif, in_kT(e_unif, spec.liquid, c),
                      el_conductor, el_uniform, 4.0 * pi * spec.liquid.sigma * R * R});
  rep.add_summary("Q_R_C", QR);
  rep.add_summary("kT_J", thermal_energy(spec.liquid, c));
  return rep;
}

Report cmd_barrier_scan(const RunConfig& cfg) {
  const DropletSpec spec = spec_of(cfg);
  const PhysicalConstants c{};
  const double r = cfg.number("r");
  const double field = cfg.number("field");
  ScanOptions opt;
  opt.mode = mode_of(cfg);
  const int n = cfg.integer("n");
  const BarrierScanResult res =
      scan_barrier(spec, r, cfg.number("h-min"), cfg.number("h-max"), n, field, c, opt);

  Report rep;
  rep.command = "barrier-scan";
  rep.columns = {"h_m", "deltaE_J", "deltaE_kT", "q_e"};
  for (std::size_t i = 0; i < res.h_samples.size(); ++i) {
    rep.rows.push_back({res.h_samples[i], res.deltaE_samples[i],
                        in_kT(res.deltaE_samples[i], spec.liquid, c), to_e(res.q_samples[i])});
  }
  rep.add_summary("h_max_m", res.h_max);
  rep.add_summary("deltaE_max_J", res.deltaE_max);
  rep.add_summary("deltaE_max_kT", in_kT(res.deltaE_max, spec.liquid, c));
  rep.add_summary("q_at_hmax_e", to_e(res.q_at_hmax));
  rep.add_summary("h0_m", res.h0 ? exact(*res.h0) : std::string("none"));
  rep.add_summary("interior_maximum", yes_no(res.interior_maximum));
  rep.add_summary("degenerate", yes_no(res.degenerate));
  if (field != 0.0 && !res.degenerate) {
    const BarrierScanResult zero =
        scan_barrier(spec, r, cfg.number("h-min"), cfg.number("h-max"), n, 0.0, c, opt);
    rep.add_summary("zero_field_deltaE_max_kT", in_kT(zero.deltaE_max, spec.liquid, c));
    rep.add_summary("field_reduction_ratio", res.deltaE_max / zero.deltaE_max);
  }
  return rep;
}

Report cmd_tentacle(const RunConfig& cfg) {
  const DropletSpec spec = spec_of(cfg);
  const PhysicalConstants c{};
  const double R = spec.radius_R;
  const double surface = 4.0 * pi * spec.liquid.sigma * R * R;
  const double ball = ball_energy_conductor(spec, c);
  const std::vector<double> hs = log_grid(cfg.number("h-min"), cfg.number("h-max"), cfg.integer("n"));

  Report rep;
  rep.command = "tentacle";
  rep.columns = {"h_m",        "h_over_R",   "r_m",      "valid",
                 "deficit_J",  "deficit_kT", "energy_J", "energy_over_asymptote"};
  std::optional<double> break_even;
  double prev_h = 0.0;
  double prev_deficit = nan;
  for (double h : hs) {
    const double r = optimal_tentacle_radius(spec, h, c);
    if (!tentacle_is_valid(spec, h, c)) {
      rep.rows.push_back({h, h / R, r, 0.0, nan, nan, nan, nan});
      prev_deficit = nan;
      continue;
    }
    const double deficit = tentacle_energy_deficit(spec, h, c);
    const double energy = tentacle_energy_bound(spec, r, h, c);
    rep.rows.push_back({h, h / R, r, 1.0, deficit, in_kT(deficit, spec.liquid, c), energy,
                        energy / surface});
    if (!break_even && prev_deficit > 0.0 && deficit < 0.0) {
      break_even = tentacle_break_even_height(spec, prev_h, h, 1e-12, c);
    }
    prev_h = h;
    prev_deficit = deficit;
  }
  rep.add_summary("asymptote_J", surface);
  rep.add_summary("ball_energy_J", ball);
  rep.add_summary("break_even_h_m", break_even ? exact(*break_even) : std::string("none"));
  rep.add_summary("break_even_h_over_R", break_even ? exact(*break_even / R) : std::string("none"));
  rep.notes.emplace_back("invalid_rows", "valid=0 rows violate r < 0.1 h or pi r^2 h < volume");
  return rep;
}

Report cmd_perturbation(const RunConfig& cfg) {
  const DropletSpec spec = spec_of(cfg);
  const PhysicalConstants c{};
  const double R = spec.radius_R;
  const std::vector<double> deltas = sorted_unique(cfg.number_list("deltas"));

  Report rep;
  rep.command = "perturbation";
  rep.columns = {"delta_over_R",      "r_over_R",      "log10_r_over_R", "rprime_over_R",
                 "log10_rprime_over_R", "h_over_R",    "log10_h_over_R", "bracket",
                 "bracket_sign",      "log10_abs_bracket", "prefactor_J", "deltaE0_J"};
  for (double t : deltas) {
    const double delta = t * R;
    const InnerRadii ir = inner_radii(R, delta);
    double h = nan;
    try {
      h = solve_depression_depth(PerturbationParams::make(R, delta));
    } catch (const DomainError&) {
      // Shape constraints fail at this delta; the bracket is still defined.
    }
    const EnergyBracket b = delta_E0_bracket(spec, delta, c);
    const double hi = std::max(b.log_positive, b.log_negative);
    const double lo = std::min(b.log_positive, b.log_negative);
    const double log10_abs = (hi + std::log(-std::expm1(lo - hi))) / std::log(10.0);
    rep.rows.push_back({t, ir.r / R, (ir.log_r - std::log(R)) / std::log(10.0), ir.rprime / R,
                        (ir.log_rprime - std::log(R)) / std::log(10.0), h / R,
                        h > 0.0 ? std::log10(h / R) : nan, b.value, double(b.sign()), log10_abs,
                        b.prefactor, b.value * b.prefactor});
  }
  const double dstar = instability_threshold_delta(spec, 1e-9, c) / R;
  rep.add_summary("delta_star_over_R", dstar);
  rep.add_summary("delta_star_in_sweep",
                  yes_no(!deltas.empty() && deltas.front() <= dstar && dstar <= deltas.back()));
  rep.notes.emplace_back("h_over_R", "nan where the depression depth has no admissible solution");
  return rep;
}

Report cmd_capacitance(const RunConfig& cfg) {
  const PhysicalConstants c{};
  const std::string shape_name = cfg.text("shape");
  Report rep;
  rep.command = "capacitance";

  std::optional<GeneratingCurve> curve;
  std::optional<GeneratingCurve> coarse;
  std::optional<double> reference;
  std::string reference_kind;
  if (shape_name == "curve") {
    const std::string path = cfg.text("curve");
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open curve file '" + path + "'");
    GeneratingCurve raw = [&] {
      try {
        return GeneratingCurve::parse(in);
      } catch (const ParseError& e) {
        throw UsageError(path + ": " + e.what());
      }
    }();
    if (cfg.is_explicit("panels")) raw = raw.resampled(cfg.integer("panels"));
    coarse = raw.resampled(std::max(2, raw.panel_count() / 2));
    curve = std::move(raw);
  } else {
    const int n = cfg.integer("panels");
    ShapeFamily shape;
    if (shape_name == "sphere") {
      const double R = cfg.number("R");
      shape = Sphere{R};
      reference = R;
      reference_kind = "sphere radius";
    } else if (shape_name == "spheroid") {
      const double r = cfg.number("r");
      const double h = cfg.number("h");
      SpheroidProtrusion{r, h}.validate();
      shape = ProlateSpheroid{r, h};
      reference = spheroid_capacitance_length(r, h);
      reference_kind = "spheroid closed form";
    } else if (shape_name == "cylinder") {
      const double r = cfg.number("r");
      const double h = cfg.number("h");
      shape = CappedCylinder{r, h};
      if (h / r > 2.0 * std::exp(1.0)) {
        reference = 0.5 * h / (std::log(2.0 * h / r) - 1.0);
        reference_kind = "slender body";
      }
    } else if (shape_name == "bump") {
      shape = SphereWithSpheroidBump{cfg.number("R"), cfg.number("r"), cfg.number("h"),
                                     cfg.number("fillet-ratio")};
    } else {
      throw UsageError("key 'shape' expects sphere, spheroid, cylinder, bump or curve, got '" +
                       shape_name + "'");
    }
    curve = generating_curve(shape, n);
    coarse = generating_curve(shape, n / 2 >= 16 ? n / 2 : 16);
  }

  const PanelSolution fine = solve_unit_potential(*curve);
  const PanelSolution half = solve_unit_potential(*coarse);
  const double Cl = fine.capacitance_length;
  const double Req = curve->equivalent_radius();
  const double min_density = fine.density.minCoeff() / (Cl / fine.areas.sum());
  rep.columns = {"panels",   "C_F",         "C_over_4pi_eps0", "R_equiv",
                 "C_over_4pi_eps0_R_equiv", "convergence", "rcond", "min_density_rel"};
  rep.rows.push_back({double(curve->panel_count()), 4.0 * pi * c.eps0 * Cl, Cl, Req, Cl / Req,
                      std::abs(Cl - half.capacitance_length) / Cl, fine.rcond, min_density});
  rep.add_summary("coarse_panels", double(coarse->panel_count()));
  rep.add_summary("coarse_C_over_4pi_eps0", half.capacitance_length);
  if (reference) {
    rep.add_summary("reference", reference_kind);
    rep.add_summary("reference_C_over_4pi_eps0", *reference);
    rep.add_summary("relative_error", (Cl - *reference) / *reference);
  }
  return rep;
}

Report cmd_screened(const RunConfig& cfg) {
  const DropletSpec spec = spec_of(cfg);
  if (!(spec.charge_Q > 0.0)) throw DomainError("screened sweep requires Q > 0");
  const PhysicalConstants c{};
  const double R = spec.radius_R;
  const double Q = spec.charge_Q;
  const double conductor = Q * Q / (8.0 * pi * c.eps0 * R);
  const double uniform = 3.0 * Q * Q / (20.0 * pi * c.eps0 * R);
  ScreenedGridOptions opt;
  opt.n_grid = cfg.integer("n-grid");

  Report rep;
  rep.command = "screened";
  rep.columns = {"rd_over_R",        "electrostatic_J", "entropic_J",       "total_J",
                 "gap_conductor",    "gap_uniform",     "electrostatic_over_conductor",
                 "electrostatic_over_uniform", "form_discrepancy"};
  for (double t : sorted_unique(cfg.number_list("rd-over-R"))) {
    const ScreenedBallSolution sol = minimize_screened_ball(spec, t * R, opt, c);
    const double es = sol.energy.electrostatic;
    rep.rows.push_back({t, es, sol.energy.entropic, sol.energy.total, (es - conductor) / conductor,
                        (uniform - es) / uniform, es / conductor, es / uniform,
                        sol.energy.form_discrepancy});
  }
  rep.add_summary("E_el_conductor_J", conductor);
  rep.add_summary("E_el_uniform_J", uniform);
  rep.add_summary("liquid_rd_over_R", debye_radius(spec.liquid, c) / R);
  return rep;
}

std::vector<Command> commands() {
  return {
      {"rayleigh", "Rayleigh charge, Debye radius and ball energies", with_common({}),
       cmd_rayleigh},
      {"barrier-scan", "energy barrier of a spheroidal protrusion versus its height",
       with_common({{"r", "1e-9"},
                    {"h-min", "2.2 r"},
                    {"h-max", "1.5e-6"},
                    {"n", "200"},
                    {"field", "0"},
                    {"mode", "in-minimization"}}),
       cmd_barrier_scan},
      {"tentacle", "energy deficit of the optimal thin tentacle versus its length",
       with_common({{"h-min", "1 R"}, {"h-max", "1e4 R"}, {"n", "161"}}), cmd_tentacle},
      {"perturbation", "sign of the energy change of the spike-and-depression perturbation",
       with_common({{"deltas", "0.002,0.005,0.01,0.02,0.05,0.1,0.15,0.2,0.25,0.3,0.35,0.4,0.45,0.5"}}),
       cmd_perturbation},
      {"capacitance", "capacitance of an axisymmetric conductor by boundary elements",
       {{"shape", "sphere"},
        {"R", "1"},
        {"r", "1"},
        {"h", "4"},
        {"fillet-ratio", "0.25"},
        {"panels", "200"},
        {"curve", ""},
        {"format", "csv"},
        {"out", ""}},
       cmd_capacitance},
      {"screened", "screened-ball free energy versus Debye radius",
       with_common({{"rd-over-R", "0.01,0.02,0.05,0.1,0.2,0.5,1,10,100"}, {"n-grid", "512"}}),
       cmd_screened},
  };
}

const char* help_for(const std::string& key) {
  for (const auto& k : key_help) {
    if (key == k.key) return k.help;
  }
  return "";
}

RunConfig resolve(const Command& cmd, const std::map<std::string, std::string>& file,
                  const std::map<std::string, std::string>& flags, bool use_defaults) {
  RunConfig cfg;
  std::map<std::string, bool> known;
  for (const auto& [k, v] : cmd.defaults) known[k] = true;
  for (const auto& [k, v] : file) {
    if (!known.count(k)) {
      throw UsageError("config: unknown key '" + k + "' for subcommand " + cmd.name);
    }
  }
  for (const auto& [k, v] : cmd.defaults) {
    if (flags.count(k)) {
      cfg.set(k, flags.at(k));
      cfg.explicit_keys.push_back(k);
    } else if (file.count(k)) {
      cfg.set(k, file.at(k));
      cfg.explicit_keys.push_back(k);
    } else if (use_defaults || k == "out") {
      cfg.set(k, v);
    }
  }
  // Default sweep ends written as "<factor> R" or "<factor> r" scale with that key.
  for (const auto& [k, v] : cmd.defaults) {
    if (!use_defaults || cfg.is_explicit(k)) continue;
    const auto space = v.find(' ');
    if (space == std::string::npos) continue;
    const double factor = std::stod(v.substr(0, space));
    cfg.set(k, exact(factor * cfg.number(v.substr(space + 1))));
  }
  return cfg;
}

void emit(const Report& rep, const RunConfig& cfg, std::ostream& out) {
  const std::string& format = cfg.text("format");
  if (format != "csv" && format != "json") {
    throw UsageError("key 'format' expects csv or json, got '" + format + "'");
  }
  const std::string path = cfg.has("out") ? cfg.values().at("out") : std::string();
  std::ofstream file;
  std::ostream* sink = &out;
  if (!path.empty()) {
    file.open(path);
    if (!file) throw UsageError("cannot open output file '" + path + "'");
    sink = &file;
  }
  if (format == "csv") {
    cli::write_csv(*sink, rep, cfg);
  } else {
    cli::write_json(*sink, rep, cfg);
  }
  if (!*sink) throw UsageError("failed writing output");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Energy landscape of charged conducting drops"};
  app.name(cli::tool_name);
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cli::tool_name) + " " + cli::tool_version);

  const std::vector<Command> cmds = commands();
  std::map<std::string, std::map<std::string, std::string>> flag_values;
  std::map<std::string, std::string> config_paths;
  std::map<std::string, bool> no_defaults;
  std::map<std::string, CLI::App*> subs;
  for (const Command& cmd : cmds) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.description);
    subs[cmd.name] = sub;
    sub->add_option("--config", config_paths[cmd.name], "flat key=value file; flags override it");
    sub->add_flag("--no-defaults", no_defaults[cmd.name], "require every key from file or flags");
    for (const auto& [key, def] : cmd.defaults) {
      std::string help = help_for(key);
      if (!def.empty()) help += " [default: " + def + "]";
      sub->add_option("--" + key, flag_values[cmd.name][key], help);
    }
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return exit_usage;
  }

  try {
    for (const Command& cmd : cmds) {
      CLI::App* sub = subs.at(cmd.name);
      if (!sub->parsed()) continue;
      std::map<std::string, std::string> flags;
      for (const auto& [key, def] : cmd.defaults) {
        if (sub->get_option("--" + key)->count() > 0) flags[key] = flag_values[cmd.name][key];
      }
      std::map<std::string, std::string> file;
      if (!config_paths[cmd.name].empty()) file = cli::read_config_file(config_paths[cmd.name]);
      const RunConfig cfg = resolve(cmd, file, flags, !no_defaults[cmd.name]);
      Report rep = cmd.run(cfg);
      if (cfg.has("charge-fraction") && !cfg.is_explicit("charge-fraction")) {
        rep.notes.emplace_back("assumption", "charge fraction Q/Q_R defaulted to " +
                                                 cfg.text("charge-fraction"));
      }
      emit(rep, cfg, out);
      return exit_ok;
    }
    err << "no subcommand given\n";
    return exit_usage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return exit_domain;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return exit_numerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_failure;
  }
}

}  // namespace chargedrop
