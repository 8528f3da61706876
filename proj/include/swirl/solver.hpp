#pragma once

#include <vector>

#include "swirl/calculus.hpp"
#include "swirl/scenario.hpp"

namespace swirl {

/// Explicit-step configuration.  Viscosity is fixed to 1 (the natural
/// normalization for these equations); dt = 0 requests the largest stable
/// step at t = 0.  The stability bound
///   dt <= cfl_safety * min(h^2/4, h/max|v|),   h = min(h_rho, h_z),
/// is recomputed every step; for swirl steps max|v| includes the singular
/// radial drift 2/rho at the first off-axis node.
struct SolverConfig {
  double dt = 0.0;
  double t_end = 0.1;
  double cfl_safety = 0.9;
  double pressure_tol = 1e-9;    // max-norm divergence after projection
  int max_pressure_iters = 400;  // Krylov iteration budget of the projection
  int sor_max_sweeps = 50000;    // cap for the compact Poisson seed solve

  void validate() const;
};

struct NseState {
  Field v_rho, v_phi, v_axial, pressure;
  double time = 0.0;
};

NseState initial_state(const CylGrid& g, const Scenario& sc, double t0);
Field initial_swirl(const CylGrid& g, const Scenario& sc, double t0);

/// Largest stable dt for the momentum step at the current state.
double stable_dt_nse(const NseState& s, const SolverConfig& cfg);
/// Largest stable dt for the swirl step (includes the 2/rho drift).
double stable_dt_swirl(const Field& v_rho, const Field& v_axial, const SolverConfig& cfg);

struct StepStats {
  double div_residual = 0.0;
  int sor_sweeps = 0;
  int krylov_iters = 0;
};

/// One explicit RK2 (Heun) advection-diffusion step (the accumulated
/// pressure gradient rides in the predictor) followed by an incremental
/// pressure projection: the bulk of the increment from a compact
/// conservative cylindrical Poisson solve (red-black SOR), polished by a
/// matrix-free BiCGStab solve of the exact divergence response of the
/// correction, until the centered divergence is below pressure_tol.
/// Throws StepSizeError on a CFL violation and SolverError (carrying the
/// residual) when the projection does not converge.
NseState step_nse(const NseState& s, const Scenario& sc, const SolverConfig& cfg,
                  const CylGrid& g, StepStats* stats = nullptr);

/// One RK2 step of the swirl transport equation
///   d_t sigma + (v_rho + 2/rho) d_rho sigma + v_axial d_z sigma = lap(sigma)
/// with sigma = 0 pinned on the axis.  The drift is never evaluated at
/// rho = 0; the first off-axis node closes its stencil with the axis value.
/// `v_*_new` are the velocities at time+dt (pass the same fields when the
/// velocity is steady).  Throws StepSizeError on a CFL violation.
Field step_swirl(const Field& sigma, const Field& v_rho, const Field& v_axial,
                 const Field& v_rho_new, const Field& v_axial_new,
                 const Scenario& sc, const SolverConfig& cfg);

/// Discrete kinetic energy integral over the grid of |v|^2/2 with the
/// cylindrical Jacobian.
double kinetic_energy(const NseState& s);

struct RunStats {
  std::vector<double> time;
  std::vector<double> max_speed;
  std::vector<double> div_residual;
  std::vector<double> energy;
  std::vector<double> sup_abs_swirl;
  std::vector<int> sor_sweeps;
};

struct RunResult {
  SnapshotSeries series;
  RunStats stats;
  double dt_used = 0.0;
  long steps = 0;
};

/// Advance the scenario to cfg.t_end, recording a snapshot (all velocity
/// components, pressure and swirl) every `snapshot_stride` steps plus the
/// final step, and per-step maxima, divergence residuals and energy.
/// Solver errors are rethrown with the failing step index attached.
RunResult run_scenario(const Scenario& sc, const CylGrid& g, SolverConfig cfg,
                       long snapshot_stride);

} // namespace swirl
