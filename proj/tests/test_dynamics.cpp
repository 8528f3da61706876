#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oracle_utils.hpp"
#include "swirl/solver.hpp"

using namespace swirl;

namespace {

double max_field_diff(const Field& a, const Field& b) {
  double m = 0.0;
  auto va = a.values();
  auto vb = b.values();
  for (std::size_t k = 0; k < va.size(); ++k) m = std::max(m, std::abs(va[k] - vb[k]));
  return m;
}

} // namespace

TEST_CASE("zero scenario stays exactly zero") {
  CylGrid g = oracle::make_grid(24, 24, 1.0, -1.0, 1.0);
  SolverConfig cfg;
  cfg.t_end = 20.0 * 0.9 * (g.h_rho() * g.h_rho() / 4.0);
  const RunResult run = run_scenario(scenario_zero(), g, cfg, 5);
  for (const auto& snapref : {run.series[run.series.size() - 1]}) {
    for (const Field& f : snapref.fields) CHECK(f.max_abs() == 0.0);
  }
  for (double d : run.stats.div_residual) CHECK(d == 0.0);
}

TEST_CASE("rigid rotation is discretely steady") {
  CylGrid g = oracle::make_grid(48, 48, 1.0, -1.0, 1.0);
  SolverConfig cfg;
  cfg.t_end = 50.0 * 0.9 * (g.h_rho() * g.h_rho() / 4.0);
  const Scenario sc = scenario_rigid_rotation(1.0);
  const RunResult run = run_scenario(sc, g, cfg, 50);
  const Snapshot& first = run.series[0];
  const Snapshot& last = run.series[run.series.size() - 1];
  CHECK(max_field_diff(first.get(FieldKind::v_phi), last.get(FieldKind::v_phi)) < 1e-12);
  CHECK(max_field_diff(first.get(FieldKind::swirl), last.get(FieldKind::swirl)) < 1e-12);
  CHECK(last.get(FieldKind::v_rho).max_abs() < 1e-12);
  for (double d : run.stats.div_residual) CHECK(d <= cfg.pressure_tol);
}

TEST_CASE("swirl equation keeps sigma = rho^2 stationary under rigid rotation") {
  // the singular drift (2/rho) d_rho sigma = 4 cancels lap sigma = 4
  for (int n : {32, 64}) {
    CylGrid g = oracle::make_grid(n, n, 1.0, -1.0, 1.0);
    const Scenario sc = scenario_rigid_rotation(1.0);
    SolverConfig cfg;
    cfg.dt = 0.5 * 0.9 * (g.h_rho() * g.h_rho() / 4.0);
    const Field sigma = initial_swirl(g, sc, 0.0);
    const Field vr(g, FieldKind::v_rho, 0.0);
    const Field vz(g, FieldKind::v_axial, 0.0);
    const Field next = step_swirl(sigma, vr, vz, vr, vz, sc, cfg);
    const double residual = max_field_diff(next, sigma) / cfg.dt;
    CHECK(residual < 1e-9);
  }
}

TEST_CASE("diffusing vortex swirl converges at second order") {
  const double circ = 2.0 * kPi, shift = 1.0;
  auto solve_err = [&](int n_rho, int n_z) {
    CylGrid g = oracle::make_grid(n_rho, n_z, 3.0, -0.25, 0.25);
    SolverConfig cfg;
    cfg.t_end = 0.1;
    const Scenario sc = scenario_lamb_oseen(circ, shift);
    const RunResult run = run_scenario(sc, g, cfg, 1000000);
    const Snapshot& last = run.series[run.series.size() - 1];
    const Field& sig = last.get(FieldKind::swirl);
    double err = 0.0;
    for (int i = 0; i < sig.ni(); ++i)
      for (int j = 0; j < sig.nj(); ++j)
        err = std::max(err, std::abs(sig(i, j) - oracle::vortex_sigma(g.rho(i), last.time,
                                                                      circ, shift)));
    return err;
  };
  const double e1 = solve_err(48, 8);
  const double e2 = solve_err(96, 16);
  CHECK(e1 / e2 > 3.0);
  CHECK(e1 / e2 < 5.5);
}

TEST_CASE("full momentum solver reproduces the vortex decay at second order") {
  // v_phi evolves under the azimuthal momentum equation; the meridional
  // components stay at solver-noise level and the pressure accumulates the
  // centrifugal balance
  const double circ = 2.0 * kPi, shift = 1.0;
  auto solve_err = [&](int n_rho, int n_z) {
    CylGrid g = oracle::make_grid(n_rho, n_z, 3.0, -0.25, 0.25);
    Scenario sc = scenario_lamb_oseen(circ, shift);
    sc.mode = AdvanceMode::full_nse;
    SolverConfig cfg;
    cfg.t_end = 0.02;
    const RunResult run = run_scenario(sc, g, cfg, 1000000);
    const Snapshot& last = run.series[run.series.size() - 1];
    const Field& vp = last.get(FieldKind::v_phi);
    double err = 0.0, vr_max = 0.0;
    for (int i = 0; i < vp.ni(); ++i)
      for (int j = 0; j < vp.nj(); ++j) {
        const double rho = g.rho(i);
        const double sig = oracle::vortex_sigma(rho, last.time, circ, shift);
        err = std::max(err, std::abs(vp(i, j) - (rho > 0.0 ? sig / rho : 0.0)));
        vr_max = std::max(vr_max, std::abs(last.get(FieldKind::v_rho)(i, j)));
      }
    CHECK(vr_max < 1e-4); // meridional flow stays at noise level
    return err;
  };
  const double e1 = solve_err(48, 8);
  const double e2 = solve_err(96, 16);
  CHECK(e1 / e2 > 2.5);
  CHECK(e1 / e2 < 6.0);
}

TEST_CASE("maximum principle holds on the vortex run") {
  CylGrid g = oracle::make_grid(64, 8, 3.0, -0.25, 0.25);
  SolverConfig cfg;
  cfg.t_end = 0.05;
  const RunResult run = run_scenario(scenario_lamb_oseen(2.0 * kPi, 1.0), g, cfg, 20);
  const double sigma0 = run.stats.sup_abs_swirl.front();
  for (double sup : run.stats.sup_abs_swirl) CHECK(sup <= sigma0 * (1.0 + 1e-12));
}

TEST_CASE("kinetic energy is nonincreasing without forcing") {
  SUBCASE("diffusing vortex") {
    CylGrid g = oracle::make_grid(64, 8, 3.0, -0.25, 0.25);
    SolverConfig cfg;
    cfg.t_end = 0.05;
    const RunResult run = run_scenario(scenario_lamb_oseen(2.0 * kPi, 1.0), g, cfg, 20);
    for (std::size_t k = 1; k < run.stats.energy.size(); ++k)
      CHECK(run.stats.energy[k] <= run.stats.energy[k - 1] * (1.0 + 1e-12));
  }
  SUBCASE("poloidal no-slip") {
    CylGrid g = oracle::make_grid(32, 32, 1.0, -1.0, 1.0);
    SolverConfig cfg;
    cfg.t_end = 12.0 * 0.9 * (g.h_rho() * g.h_rho() / 4.0);
    const RunResult run = run_scenario(scenario_poloidal(0.1, g), g, cfg, 4);
    for (std::size_t k = 1; k < run.stats.energy.size(); ++k)
      CHECK(run.stats.energy[k] <= run.stats.energy[k - 1] * (1.0 + 1e-12));
  }
}

TEST_CASE("projection keeps the divergence at tolerance on a poloidal field") {
  CylGrid g = oracle::make_grid(48, 48, 1.0, -1.0, 1.0);
  SolverConfig cfg;
  cfg.t_end = 10.0 * 0.9 * (g.h_rho() * g.h_rho() / 4.0);
  const RunResult run = run_scenario(scenario_poloidal(0.1, g), g, cfg, 5);
  for (std::size_t k = 1; k < run.stats.div_residual.size(); ++k)
    CHECK(run.stats.div_residual[k] <= cfg.pressure_tol);
}

TEST_CASE("time steps beyond the stability bound are refused") {
  CylGrid g = oracle::make_grid(32, 32, 1.0, -1.0, 1.0);
  const Scenario sc = scenario_rigid_rotation(1.0);
  SolverConfig cfg;
  cfg.dt = 1.0; // far beyond h^2/4
  cfg.t_end = 1.0;
  const NseState s = initial_state(g, sc, 0.0);
  CHECK_THROWS_AS(step_nse(s, sc, cfg, g), StepSizeError);
  const Field sigma = initial_swirl(g, sc, 0.0);
  const Field vr(g, FieldKind::v_rho, 0.0), vz(g, FieldKind::v_axial, 0.0);
  CHECK_THROWS_AS(step_swirl(sigma, vr, vz, vr, vz, sc, cfg), StepSizeError);
}

TEST_CASE("projection non-convergence raises a solver error with residual") {
  CylGrid g = oracle::make_grid(32, 32, 1.0, -1.0, 1.0);
  const Scenario sc = scenario_poloidal(0.1, g);
  SolverConfig cfg;
  cfg.dt = 0.5 * 0.9 * g.h_rho() * g.h_rho() / 4.0;
  cfg.t_end = cfg.dt;
  cfg.pressure_tol = 1e-300; // unreachable
  cfg.max_pressure_iters = 1;
  cfg.sor_max_sweeps = 8;
  const NseState s = initial_state(g, sc, 0.0);
  try {
    (void)step_nse(s, sc, cfg, g);
    FAIL("expected SolverError");
  } catch (const SolverError& e) {
    CHECK(e.residual() > 0.0);
  }
}

TEST_CASE("swirl and azimuthal velocity are consistent transforms") {
  CylGrid g = oracle::make_grid(40, 16, 2.0, -0.5, 0.5);
  const Field vp = Field::sampled(g, FieldKind::v_phi, 0.0, [](double rho, double z) {
    return std::sin(1.0 + rho) * std::cos(z);
  });
  const Field sigma = swirl_from_vphi(vp);
  for (int j = 0; j < sigma.nj(); ++j) CHECK(sigma(0, j) == 0.0);
  CHECK(sigma(8, 3) == doctest::Approx(g.rho(8) * vp(8, 3)).epsilon(1e-15));
  const Field back = vphi_from_swirl(sigma);
  // identity off-axis to round-off
  double m = 0.0;
  for (int i = 1; i < vp.ni(); ++i)
    for (int j = 0; j < vp.nj(); ++j) m = std::max(m, std::abs(back(i, j) - vp(i, j)));
  CHECK(m < 1e-14);
  CHECK(back(0, 4) == 0.0);
}

TEST_CASE("vortex swirl matches the closed form pointwise") {
  // sigma(rho=2, t=0) = 1 - 1/e at circulation 2 pi with unit time shift
  const Scenario sc = scenario_lamb_oseen(2.0 * kPi, 1.0);
  CHECK(sc.exact(FieldKind::swirl, 2.0, 0.0, 0.0) ==
        doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-14));
}

TEST_CASE("run_scenario records snapshots at the stride and the final step") {
  CylGrid g = oracle::make_grid(16, 16, 1.0, -1.0, 1.0);
  SolverConfig cfg;
  cfg.dt = 0.9 * g.h_rho() * g.h_rho() / 4.0;
  cfg.t_end = 10.5 * cfg.dt; // 11 steps after rounding up
  const RunResult run = run_scenario(scenario_zero(), g, cfg, 4);
  CHECK(run.steps == 11);
  // initial + steps 4, 8, 11
  CHECK(run.series.size() == 4);
  CHECK(run.series[run.series.size() - 1].time == doctest::Approx(cfg.t_end));
}
