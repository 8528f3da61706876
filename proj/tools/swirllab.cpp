// Orchestration front door: one binary, five subcommands (simulate,
// criterion, oscillation, constants, verify).  Exit codes: 0 = completed
// (criterion/lemma failures are data, not errors), 1 = config/input error,
// 2 = solver error.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "swirl/lemma_harness.hpp"
#include "swirl/oscillation.hpp"
#include "swirl/reports.hpp"
#include "swirl/snapshot_io.hpp"
#include "swirl/solver.hpp"
#include "swirl/threading.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

struct ConfigEcho {
  std::vector<std::pair<std::string, std::string>> entries;

  void put(const std::string& k, const std::string& v) { entries.emplace_back(k, v); }
  void put(const std::string& k, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    entries.emplace_back(k, buf);
  }
  void put(const std::string& k, long v) { entries.emplace_back(k, std::to_string(v)); }

  std::string canonical() const {
    std::string s;
    for (const auto& [k, v] : entries) s += k + "=" + v + "\n";
    return s;
  }
  json to_json() const {
    json j;
    for (const auto& [k, v] : entries) j[k] = v;
    return j;
  }
};

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::trunc);
  out << text;
  if (!out) throw swirl::DomainError("cannot write " + p.string());
}

// ------------------------------------------------------------- simulate

struct SimulateOpts {
  std::string scenario = "rigid-rotation";
  double omega = 1.0, circulation = 2.0 * swirl::kPi, t_shift = 1.0, amplitude = 0.1;
  int n_rho = 128, n_z = 128;
  double rho_max = 1.0, z_min = -1.0, z_max = 1.0;
  double t_start = 0.0, t_end = 0.05;
  double dt = 0.0, cfl = 0.9, pressure_tol = 1e-9;
  int max_pressure_iters = 400;
  long stride = 50;
  bool swirl_only = false;
  std::string run_dir;
};

int cmd_simulate(const SimulateOpts& o, const swirl::GaugeParams& gauge,
                 const fs::path& out_root, long seed) {
  gauge.validate(); // alpha outside (0, 1/224] is a config error
  swirl::CylGrid g;
  g.rho_max = o.rho_max;
  g.z_min = o.z_min;
  g.z_max = o.z_max;
  g.n_rho = o.n_rho;
  g.n_z = o.n_z;
  g.t_start = o.t_start;
  g.t_end = o.t_end;
  g.validate();

  swirl::Scenario sc =
      swirl::make_scenario(o.scenario, o.omega, o.circulation, o.t_shift, o.amplitude, g);
  if (o.swirl_only) sc.mode = swirl::AdvanceMode::swirl_only;

  swirl::SolverConfig cfg;
  cfg.dt = o.dt;
  cfg.t_end = o.t_end;
  cfg.cfl_safety = o.cfl;
  cfg.pressure_tol = o.pressure_tol;
  cfg.max_pressure_iters = o.max_pressure_iters;
  cfg.validate();

  ConfigEcho echo;
  echo.put("scenario", o.scenario);
  echo.put("omega", o.omega);
  echo.put("circulation", o.circulation);
  echo.put("t_shift", o.t_shift);
  echo.put("amplitude", o.amplitude);
  echo.put("n_rho", static_cast<long>(o.n_rho));
  echo.put("n_z", static_cast<long>(o.n_z));
  echo.put("rho_max", o.rho_max);
  echo.put("z_min", o.z_min);
  echo.put("z_max", o.z_max);
  echo.put("t_start", o.t_start);
  echo.put("t_end", o.t_end);
  echo.put("dt", o.dt);
  echo.put("cfl_safety", o.cfl);
  echo.put("pressure_tol", o.pressure_tol);
  echo.put("max_pressure_iters", static_cast<long>(o.max_pressure_iters));
  echo.put("stride", o.stride);
  echo.put("mode", sc.mode == swirl::AdvanceMode::swirl_only ? "swirl-only" : "full");
  echo.put("c_star", gauge.c_star);
  echo.put("alpha", gauge.alpha);
  echo.put("seed", seed);

  swirl::RunResult run = swirl::run_scenario(sc, g, cfg, o.stride);

  json manifest;
  manifest["config"] = echo.to_json();
  char hash[24];
  std::snprintf(hash, sizeof(hash), "%016llx",
                static_cast<unsigned long long>(fnv1a(echo.canonical())));
  manifest["config_hash"] = hash;
  manifest["dt_used"] = run.dt_used;
  manifest["steps"] = run.steps;
  manifest["stats"] = {{"time", run.stats.time},
                       {"max_speed", run.stats.max_speed},
                       {"div_residual", run.stats.div_residual},
                       {"energy", run.stats.energy},
                       {"sup_abs_swirl", run.stats.sup_abs_swirl},
                       {"sor_sweeps", run.stats.sor_sweeps}};

  const fs::path dir = o.run_dir.empty() ? out_root / ("run-" + o.scenario)
                                         : fs::path(o.run_dir);
  swirl::write_series(dir, run.series, manifest);
  std::cout << "wrote " << run.series.size() << " snapshots to " << dir.string() << "\n";
  double worst_div = 0.0;
  for (double d : run.stats.div_residual) worst_div = std::max(worst_div, d);
  std::cout << "steps=" << run.steps << " dt=" << run.dt_used
            << " max_div_residual=" << worst_div << "\n";
  return 0;
}

// ------------------------------------------------------------- criterion

int cmd_criterion(const std::string& snap_dir, const swirl::GaugeParams& gauge,
                  std::vector<double> probe_z, double probe_t, double r_max, double r_min,
                  std::vector<double> radii, const fs::path& out_root) {
  gauge.validate();
  const swirl::SnapshotSeries s = swirl::read_series(snap_dir);
  const swirl::CylGrid& g = s.grid();

  if (probe_z.empty()) probe_z.push_back(0.5 * (g.z_min + g.z_max));
  if (std::isnan(probe_t)) probe_t = s.t_last();
  std::vector<swirl::ProbePoint> probes;
  for (double z : probe_z) probes.push_back({z, probe_t});

  if (radii.empty()) {
    const double span = probe_t - s.t_first();
    if (r_max <= 0.0)
      r_max = std::min({2.0 / 3.0 * 0.999, 0.95 * std::sqrt(std::max(span, 0.0)),
                        0.9 * (g.rho_max - g.h_rho())});
    if (r_min <= 0.0) r_min = r_max / 8.0;
    for (double r = r_max; r >= r_min * (1.0 - 1e-12); r *= 0.5) radii.push_back(r);
  }
  if (radii.empty()) throw swirl::ContractError("criterion: no radii to scan");

  const swirl::CriterionReport rep = swirl::scan_condition(s, probes, radii, gauge);
  fs::create_directories(out_root);
  write_text(out_root / "criterion.json", swirl::to_json(rep).dump(2) + "\n");
  write_text(out_root / "criterion.csv", swirl::to_csv(rep));
  std::cout << "criterion scan: " << rep.records.size() << " records, worst margin "
            << rep.worst_margin << (rep.pass ? " (pass)" : " (fail)") << "\n";
  return 0; // criterion failures are data
}

// ----------------------------------------------------------- oscillation

int cmd_oscillation(const std::string& snap_dir, double center_z, double center_t,
                    double ref_r, double r_min, double mp_tol_rel,
                    const fs::path& out_root) {
  const swirl::SnapshotSeries s = swirl::read_series(snap_dir);
  const swirl::CylGrid& g = s.grid();
  if (std::isnan(center_t)) center_t = s.t_last();
  if (std::isnan(center_z)) center_z = 0.5 * (g.z_min + g.z_max);
  const double h = std::max(g.h_rho(), g.h_z());
  if (ref_r <= 0.0) {
    const double span = center_t - s.t_first();
    ref_r = std::min({(g.rho_max - g.h_rho()) / 2.2, 0.45 * std::sqrt(std::max(span, 0.0)),
                      (std::min(center_z - g.z_min, g.z_max - center_z) - g.h_z()) / 2.2});
  }
  if (r_min <= 0.0) r_min = std::max(4.0 * h, ref_r / 16.0);

  const swirl::ProbePoint center{center_z, center_t};
  const auto records = swirl::dyadic_scan(s, center, r_min, 2.0 * ref_r);
  if (records.size() < 2) throw swirl::ContractError("oscillation: empty scan");
  const swirl::DecayFit fit = swirl::fit_decay(records, ref_r);

  fs::create_directories(out_root);
  write_text(out_root / "oscillation.csv", swirl::osc_records_csv(records));
  write_text(out_root / "decay_fit.json", swirl::to_json(fit).dump(2) + "\n");

  // maximum-principle monitor over the same snapshots
  const double sigma0 = swirl::eval_sigma0(s);
  const auto mp = swirl::max_principle_monitor(s, sigma0, mp_tol_rel);
  json mpj{{"sigma0", mp.sigma0},
           {"tol_rel", mp.tol_rel},
           {"times", mp.times},
           {"sup_abs", mp.sup_abs},
           {"violated", mp.violated},
           {"first_violation", mp.first_violation}};
  write_text(out_root / "max_principle.json", mpj.dump(2) + "\n");

  if (fit.degenerate)
    std::cout << "oscillation fit degenerate (fewer than 4 nonzero records at or "
                 "below the reference radius)\n";
  else
    std::cout << "oscillation fit: C1=" << fit.C1 << " C2=" << fit.C2
              << " (envelope C2=" << fit.envelope_C2 << ")\n";
  std::cout << "max principle: sup|sigma| bound " << sigma0 * (1.0 + mp_tol_rel)
            << (mp.violated ? " VIOLATED" : " held") << "\n";
  return 0;
}

// ------------------------------------------------------------- constants

bool set_moser_input(swirl::MoserInputs& in, const std::string& name, double v) {
  if (name == "tau1") in.tau1 = v;
  else if (name == "tau") in.tau = v;
  else if (name == "gamma1") in.gamma1 = v;
  else if (name == "gamma") in.gamma = v;
  else if (name == "theta") in.theta = v;
  else if (name == "sigma_frac") in.sigma_frac = v;
  else if (name == "delta0") in.delta0 = v;
  else if (name == "delta1") in.delta1 = v;
  else if (name == "mu1") in.mu1 = v;
  else if (name == "theta1") in.theta1 = v;
  else if (name == "lambda") in.lambda = v;
  else if (name == "M0") in.M0 = v;
  else if (name == "kR") in.k_R = v;
  else if (name == "f2R") in.f2R = v;
  else if (name == "M2R") in.M2R = v;
  else if (name == "g2R") in.g2R = v;
  else if (name == "R") { in.R = v; in.t_bar = -v * v; }
  else if (name == "t_bar") in.t_bar = v;
  else if (name == "c") in.c = v;
  else if (name == "c_star") in.gauge.c_star = v;
  else if (name == "alpha") in.gauge.alpha = v;
  else return false;
  return true;
}

struct Sweep {
  std::string name;
  std::vector<double> values;
};

Sweep parse_sweep(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos)
    throw swirl::ContractError("sweep must look like name=lo:hi:count");
  Sweep sw;
  sw.name = spec.substr(0, eq);
  const std::string rest = spec.substr(eq + 1);
  const auto c1 = rest.find(':');
  const auto c2 = rest.find(':', c1 == std::string::npos ? 0 : c1 + 1);
  try {
    if (c1 == std::string::npos) {
      sw.values.push_back(std::stod(rest));
      return sw;
    }
    if (c2 == std::string::npos)
      throw swirl::ContractError("sweep must look like name=lo:hi:count");
    const double lo = std::stod(rest.substr(0, c1));
    const double hi = std::stod(rest.substr(c1 + 1, c2 - c1 - 1));
    const long count = std::stol(rest.substr(c2 + 1));
    if (count < 1 || count > 1000000)
      throw swirl::ContractError("sweep count must lie in [1, 1e6]");
    for (long k = 0; k < count; ++k)
      sw.values.push_back(count == 1 ? lo
                                     : lo + (hi - lo) * static_cast<double>(k) /
                                               static_cast<double>(count - 1));
  } catch (const std::invalid_argument&) {
    throw swirl::ContractError("malformed sweep range: " + spec);
  } catch (const std::out_of_range&) {
    throw swirl::ContractError("malformed sweep range: " + spec);
  }
  return sw;
}

int cmd_constants(const std::vector<std::string>& sweep_specs,
                  const std::vector<std::string>& set_specs, const fs::path& out_root) {
  swirl::MoserInputs base;
  for (const auto& s : set_specs) {
    const Sweep sw = parse_sweep(s);
    if (sw.values.size() != 1)
      throw swirl::ContractError("--set takes a single value: " + s);
    if (!set_moser_input(base, sw.name, sw.values[0]))
      throw swirl::ContractError("unknown input name: " + sw.name);
  }
  std::vector<Sweep> sweeps;
  std::size_t rows = 1;
  for (const auto& s : sweep_specs) {
    sweeps.push_back(parse_sweep(s));
    swirl::MoserInputs probe;
    if (!set_moser_input(probe, sweeps.back().name, sweeps.back().values[0]))
      throw swirl::ContractError("unknown input name: " + sweeps.back().name);
    rows *= sweeps.back().values.size();
    if (rows > 2000000) throw swirl::ContractError("sweep grid too large");
  }

  std::string csv = swirl::moser_csv_header() + "\n";
  std::vector<std::size_t> idx(sweeps.size(), 0);
  for (std::size_t row = 0; row < rows; ++row) {
    swirl::MoserInputs in = base;
    std::size_t rem = row;
    for (std::size_t d = 0; d < sweeps.size(); ++d) {
      const std::size_t n = sweeps[d].values.size();
      set_moser_input(in, sweeps[d].name, sweeps[d].values[rem % n]);
      rem /= n;
    }
    swirl::MoserConstants m;
    std::string error;
    try {
      m = swirl::compute_moser_constants(in);
    } catch (const swirl::DomainError& e) {
      m.in = in;
      error = e.what();
    } catch (const swirl::ContractError& e) {
      m.in = in;
      error = e.what();
    }
    csv += swirl::moser_csv_row(m, error) + "\n";
  }
  fs::create_directories(out_root);
  write_text(out_root / "constants.csv", csv);
  std::cout << "wrote " << rows << " constants row(s) to "
            << (out_root / "constants.csv").string() << "\n";
  return 0; // domain violations are row-level data
}

// ---------------------------------------------------------------- verify

int cmd_verify(const std::string& snap_dir, double probe_z, double probe_t, double R,
               double c, const swirl::GaugeParams& gauge, const fs::path& out_root) {
  gauge.validate();
  const swirl::SnapshotSeries s = swirl::read_series(snap_dir);
  const swirl::CylGrid& g = s.grid();
  if (std::isnan(probe_t)) probe_t = s.t_last();
  if (std::isnan(probe_z)) probe_z = 0.5 * (g.z_min + g.z_max);
  if (R <= 0.0) {
    const double span = probe_t - s.t_first();
    R = std::min({1.0 / 6.0, 0.49 * std::sqrt(std::max(span, 0.0)),
                  0.49 * (g.rho_max - g.h_rho()),
                  0.49 * (std::min(probe_z - g.z_min, g.z_max - probe_z) - g.h_z())});
  }
  if (!(R > 0.0)) throw swirl::ContractError("verify: no admissible probe radius");

  swirl::HarnessParams params;
  params.probe = {probe_z, probe_t};
  params.R = R;
  params.c = c;
  params.gauge = gauge;

  json ledger;
  try {
    const swirl::PiConstruction pc = swirl::pi_from_swirl(s, params.probe, R);
    if (!(pc.k_R > 0.0)) {
      // constant swirl: nothing to verify, report skipped rows
      swirl::GrowthLedger led;
      led.params = params;
      for (const char* name : {"sup-bound", "growth-persistence", "measure-shrink",
                               "measure-to-pointwise", "level-set-density"}) {
        swirl::LemmaRow row;
        row.lemma = name;
        row.status = "skipped: degenerate (constant swirl, k_R = 0)";
        led.rows.push_back(row);
      }
      ledger = swirl::to_json(led);
    } else {
      params.k_R = pc.k_R;
      const swirl::GrowthLedger led = swirl::verify_growth_lemmas(pc.pi, &s, params);
      ledger = swirl::to_json(led);
    }
  } catch (const swirl::ContractError& e) {
    swirl::GrowthLedger led;
    led.params = params;
    for (const char* name : {"sup-bound", "growth-persistence", "measure-shrink",
                             "measure-to-pointwise", "level-set-density"}) {
      swirl::LemmaRow row;
      row.lemma = name;
      row.status = std::string("skipped: contract (") + e.what() + ")";
      led.rows.push_back(row);
    }
    ledger = swirl::to_json(led);
  }
  fs::create_directories(out_root);
  write_text(out_root / "growth_ledger.json", ledger.dump(2) + "\n");
  std::cout << "growth ledger written; any_failure="
            << (ledger.value("any_failure", false) ? "true" : "false") << "\n";
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"axisymmetric swirl laboratory"};
  app.set_config("--config", "", "plain-text key=value config file");

  std::string out_dir;
  if (const char* env = std::getenv("SWIRLLAB_OUT")) out_dir = env;
  if (out_dir.empty()) out_dir = "out";
  app.add_option("--out", out_dir, "output root directory");
  int threads = 0;
  app.add_option("--threads", threads, "OpenMP thread count (0 = library default)");
  long seed = 0;
  app.add_option("--seed", seed, "seed echoed into manifests (sampling oracles)");

  swirl::GaugeParams gauge;
  app.add_option("--c-star", gauge.c_star, "gauge prefactor c_*");
  app.add_option("--alpha", gauge.alpha, "gauge exponent alpha, 0 < alpha <= 1/224");

  SimulateOpts so;
  auto* sim = app.add_subcommand("simulate", "advance a scenario and write snapshots");
  sim->add_option("--scenario", so.scenario,
                  "zero | rigid-rotation | lamb-oseen | poloidal");
  sim->add_option("--omega", so.omega, "rigid rotation rate");
  sim->add_option("--circulation", so.circulation, "vortex circulation");
  sim->add_option("--t-shift", so.t_shift, "vortex time shift");
  sim->add_option("--amplitude", so.amplitude, "poloidal amplitude");
  sim->add_option("--n-rho", so.n_rho);
  sim->add_option("--n-z", so.n_z);
  sim->add_option("--rho-max", so.rho_max);
  sim->add_option("--z-min", so.z_min);
  sim->add_option("--z-max", so.z_max);
  sim->add_option("--t-start", so.t_start);
  sim->add_option("--t-end", so.t_end);
  sim->add_option("--dt", so.dt, "time step (0 = automatic from the stability bound)");
  sim->add_option("--cfl", so.cfl, "CFL safety factor in (0,1]");
  sim->add_option("--pressure-tol", so.pressure_tol);
  sim->add_option("--max-pressure-iters", so.max_pressure_iters);
  sim->add_option("--stride", so.stride, "snapshot stride in steps");
  sim->add_flag("--swirl-only", so.swirl_only, "advance only the swirl equation");
  sim->add_option("--run-dir", so.run_dir, "explicit snapshot directory");

  std::string snap_dir;
  std::vector<double> probe_z, radii;
  double probe_t = std::nan(""), r_max = 0.0, r_min = 0.0;
  auto* cri = app.add_subcommand("criterion", "scan the scale-invariant condition");
  cri->add_option("--snapshots", snap_dir)->required();
  cri->add_option("--probe-z", probe_z, "axis probe heights");
  cri->add_option("--probe-t", probe_t, "probe time (default: last snapshot)");
  cri->add_option("--r-max", r_max);
  cri->add_option("--r-min", r_min);
  cri->add_option("--radii", radii, "explicit radius list");

  double center_z = std::nan(""), center_t = std::nan(""), ref_r = 0.0, osc_rmin = 0.0;
  auto* osc = app.add_subcommand("oscillation", "dyadic oscillation scan and decay fit");
  osc->add_option("--snapshots", snap_dir)->required();
  osc->add_option("--center-z", center_z, "axis height (default: grid mid-height)");
  osc->add_option("--center-t", center_t, "probe time (default: last snapshot)");
  osc->add_option("--ref-r", ref_r, "reference radius R (records span [r_min, 2R])");
  osc->add_option("--r-min", osc_rmin);
  double mp_tol_rel = 1e-9;
  osc->add_option("--mp-tol-rel", mp_tol_rel,
                  "relative slack of the maximum-principle monitor");

  std::vector<std::string> sweep_specs, set_specs;
  auto* con = app.add_subcommand("constants", "iteration-constants table");
  con->add_option("--sweep", sweep_specs, "name=lo:hi:count (cartesian product)");
  con->add_option("--set", set_specs, "name=value fixed input");

  double verify_z = std::nan(""), verify_t = std::nan(""), verify_R = 0.0, verify_c = 1.0;
  auto* ver = app.add_subcommand("verify", "growth-lemma harness on a solved run");
  ver->add_option("--snapshots", snap_dir)->required();
  ver->add_option("--probe-z", verify_z, "axis height (default: grid mid-height)");
  ver->add_option("--probe-t", verify_t, "probe time (default: last snapshot)");
  ver->add_option("--R", verify_R, "probe radius (0 = automatic)");
  ver->add_option("--c", verify_c, "absolute-constant knob");

  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  swirl::set_threads(threads);
  const fs::path out_root = out_dir;

  try {
    if (sim->parsed()) return cmd_simulate(so, gauge, out_root, seed);
    if (cri->parsed())
      return cmd_criterion(snap_dir, gauge, probe_z, probe_t, r_max, r_min, radii,
                           out_root);
    if (osc->parsed())
      return cmd_oscillation(snap_dir, center_z, center_t, ref_r, osc_rmin,
                             mp_tol_rel, out_root);
    if (con->parsed()) return cmd_constants(sweep_specs, set_specs, out_root);
    if (ver->parsed())
      return cmd_verify(snap_dir, verify_z, verify_t, verify_R, verify_c, gauge, out_root);
  } catch (const swirl::StepSizeError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 2;
  } catch (const swirl::SolverError& e) {
    std::cerr << "solver error: " << e.what() << " (residual " << e.residual() << ")\n";
    return 2;
  } catch (const swirl::ContractError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const swirl::DomainError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
