#pragma once

#include <optional>
#include <vector>

#include "swirl/quadrature.hpp"

namespace swirl {

/// The slowly growing gauge g(R) = c_* (ln ln^{1/2}(1/R))^alpha, clamped from
/// below at 1.  The clamp extends the double log harmlessly where its inner
/// value drops to or below zero (R >= 1/e).
struct GaugeParams {
  double c_star = 1.0;
  double alpha = 1.0 / 224.0;

  void validate() const {
    if (!(c_star > 0.0)) throw ContractError("GaugeParams: c_star must be positive");
    if (!(alpha > 0.0) || alpha > 1.0 / 224.0)
      throw ContractError("GaugeParams: alpha must satisfy 0 < alpha <= 1/224");
  }
};

/// g(R) on (0, 2/3]; DomainError outside.
double eval_g(double R, const GaugeParams& p);

struct ProbePoint {
  double z = 0.0; // axis height of the probe center
  double t = 0.0; // top of the backward time window
};

/// f(R; z0) = R^{-1/2} ( int ( int |v|^3 dx )^{4/3} dt )^{3/4} over Q(z0, R).
double eval_f(const SnapshotSeries& s, const ProbePoint& z0, double R);

/// M(R; z0) = R^{-1/2} ( int_{Q(z0,R)} |v|^{10/3} dz )^{3/10}.
double eval_M(const SnapshotSeries& s, const ProbePoint& z0, double R);

/// Sigma_0 = sup over the grid of |rho * v_phi| at the initial snapshot.
double eval_sigma0(const SnapshotSeries& s);

struct CriterionRecord {
  ProbePoint z0;
  double R = 0.0;
  double f = 0.0, M = 0.0, g = 0.0;
  double margin = 0.0; // g - (f + M)
  bool pass = false;
};

struct CriterionReport {
  GaugeParams gauge;
  double sigma0 = 0.0;
  std::vector<CriterionRecord> records; // sorted by R
  double worst_margin = 0.0;
  std::optional<CriterionRecord> first_failure;
  bool pass = true;
};

/// Evaluate f + M against g for every (probe, R).  All probes are validated
/// up front (DomainError); criterion failures are data, not errors.
CriterionReport scan_condition(const SnapshotSeries& s, const std::vector<ProbePoint>& probes,
                               const std::vector<double>& radii, const GaugeParams& gauge);

/// Fixed nonnegative C^1 test bump for the local energy inequality:
///   phi(x,t) = ((1 - (rho^2+(z-z_center)^2)/radius^2)_+)^2 * T(t),
/// T a smoothstep ramp from 0 at t_start to 1 at t_ramp, constant after.
struct EnergyBump {
  double z_center = 0.0;
  double radius = 0.6;
  double t_start = 0.0;
  double t_ramp = 0.05;
  double t_eval = 0.1;

  double phi(double rho, double z, double t) const;
  double dphi_dt(double rho, double z, double t) const;
  double laplacian(double rho, double z, double t) const; // cylindrical
  double dphi_drho(double rho, double z, double t) const;
  double dphi_dz(double rho, double z, double t) const;
};

/// Signed residual RHS - LHS of the local energy inequality with the bump
/// above:
///   LHS = int phi |w(t_eval)|^2 + 2 int int phi |grad w|^2
///   RHS = int int |w|^2 (d_t phi + lap phi) + w.grad phi (|w|^2 + 2 q)
/// Nonnegative (>= -tol) certifies the inequality for this test function.
/// Requires pressure snapshots (ContractError) and the bump support inside
/// the sampled domain (DomainError).
double energy_inequality_residual(const SnapshotSeries& s, const EnergyBump& bump);

} // namespace swirl
