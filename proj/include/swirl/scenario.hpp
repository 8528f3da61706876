#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "swirl/field.hpp"

namespace swirl {

/// How a scenario is advanced in time.
enum class AdvanceMode {
  full_nse,   // momentum + projection, swirl co-advanced
  swirl_only, // velocity held at the scenario's exact values, swirl advanced
};

/// Initial data, optional exact evaluator and boundary prescription of one
/// run.  When an exact evaluator exists it supplies Dirichlet data on the
/// outer boundaries; otherwise the boundaries are no-slip.
struct Scenario {
  std::string name;
  AdvanceMode mode = AdvanceMode::full_nse;

  std::function<double(double rho, double z)> v_rho0;
  std::function<double(double rho, double z)> v_phi0;
  std::function<double(double rho, double z)> v_axial0;
  std::function<double(double rho, double z)> pressure0;

  bool has_exact = false;
  std::function<double(FieldKind, double rho, double z, double t)> exact;

  double exact_at(FieldKind k, double rho, double z, double t) const {
    return has_exact ? exact(k, rho, z, t) : 0.0;
  }
};

Scenario scenario_zero();

/// v_phi = omega*rho, v_rho = v_axial = 0, q = omega^2 rho^2 / 2; an exact
/// steady state.
Scenario scenario_rigid_rotation(double omega);

/// Diffusing line vortex: v_phi = (circulation/(2 pi rho)) (1 - e^{-rho^2/(4(t+t_shift))}),
/// v_rho = v_axial = 0; sigma = (circulation/(2 pi)) (1 - e^{-rho^2/(4(t+t_shift))}).
/// The time shift keeps the initial data smooth.
Scenario scenario_lamb_oseen(double circulation, double t_shift);

/// Divergence-free poloidal test field from the streamfunction
/// psi = A rho^2 (rho_max-rho)^2 sin^2(pi (z-z_min)/L); no exact solution,
/// no-slip boundaries.  Used to exercise the projection on genuinely
/// nonzero-divergence predictors.
Scenario scenario_poloidal(double amplitude, const CylGrid& g);

/// Look up a scenario by name ("zero", "rigid-rotation", "lamb-oseen",
/// "poloidal"); parameters as documented on the factories.
Scenario make_scenario(const std::string& name, double omega, double circulation,
                       double t_shift, double amplitude, const CylGrid& g);

/// Sample the scenario's exact fields (the listed kinds) at the given times.
SnapshotSeries sample_series(const CylGrid& g, const Scenario& sc,
                             const std::vector<double>& times,
                             const std::vector<FieldKind>& kinds);

} // namespace swirl
