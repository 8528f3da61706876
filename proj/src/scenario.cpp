#include "swirl/scenario.hpp"

#include <cmath>

namespace swirl {
namespace {

double zero2(double, double) { return 0.0; }

} // namespace

Scenario scenario_zero() {
  Scenario s;
  s.name = "zero";
  s.mode = AdvanceMode::full_nse;
  s.v_rho0 = s.v_phi0 = s.v_axial0 = s.pressure0 = zero2;
  s.has_exact = true;
  s.exact = [](FieldKind, double, double, double) { return 0.0; };
  return s;
}

Scenario scenario_rigid_rotation(double omega) {
  Scenario s;
  s.name = "rigid-rotation";
  s.mode = AdvanceMode::full_nse;
  s.v_rho0 = s.v_axial0 = zero2;
  s.v_phi0 = [omega](double rho, double) { return omega * rho; };
  s.pressure0 = [omega](double rho, double) { return 0.5 * omega * omega * rho * rho; };
  s.has_exact = true;
  s.exact = [omega](FieldKind k, double rho, double, double) {
    switch (k) {
      case FieldKind::v_phi: return omega * rho;
      case FieldKind::pressure: return 0.5 * omega * omega * rho * rho;
      case FieldKind::swirl: return omega * rho * rho;
      default: return 0.0;
    }
  };
  return s;
}

Scenario scenario_lamb_oseen(double circulation, double t_shift) {
  if (!(t_shift > 0.0))
    throw ContractError("lamb-oseen: the time shift must be positive to keep t=0 smooth");
  Scenario s;
  s.name = "lamb-oseen";
  s.mode = AdvanceMode::swirl_only;
  const double c2pi = circulation / (2.0 * kPi);
  auto sigma = [c2pi, t_shift](double rho, double t) {
    return c2pi * (-std::expm1(-rho * rho / (4.0 * (t + t_shift))));
  };
  s.v_rho0 = s.v_axial0 = s.pressure0 = zero2;
  s.v_phi0 = [sigma](double rho, double) {
    return rho > 0.0 ? sigma(rho, 0.0) / rho : 0.0;
  };
  s.has_exact = true;
  s.exact = [sigma](FieldKind k, double rho, double, double t) {
    switch (k) {
      case FieldKind::swirl: return sigma(rho, t);
      case FieldKind::v_phi: return rho > 0.0 ? sigma(rho, t) / rho : 0.0;
      default: return 0.0;
    }
  };
  return s;
}

Scenario scenario_poloidal(double amplitude, const CylGrid& g) {
  Scenario s;
  s.name = "poloidal";
  s.mode = AdvanceMode::full_nse;
  const double rmax = g.rho_max, zmin = g.z_min, L = g.z_max - g.z_min;
  // psi = A rho^2 (rmax-rho)^2 sin^2(pi (z-zmin)/L); v = curl(psi e_phi / rho)
  s.v_rho0 = [=](double rho, double z) {
    const double d = rmax - rho;
    const double arg = kPi * (z - zmin) / L;
    return -amplitude * rho * d * d * (kPi / L) * std::sin(2.0 * arg);
  };
  s.v_axial0 = [=](double rho, double z) {
    const double d = rmax - rho;
    const double sn = std::sin(kPi * (z - zmin) / L);
    return amplitude * 2.0 * d * (rmax - 2.0 * rho) * sn * sn;
  };
  s.v_phi0 = zero2;
  s.pressure0 = zero2;
  s.has_exact = false; // no-slip outer boundaries
  return s;
}

Scenario make_scenario(const std::string& name, double omega, double circulation,
                       double t_shift, double amplitude, const CylGrid& g) {
  if (name == "zero") return scenario_zero();
  if (name == "rigid-rotation") return scenario_rigid_rotation(omega);
  if (name == "lamb-oseen") return scenario_lamb_oseen(circulation, t_shift);
  if (name == "poloidal") return scenario_poloidal(amplitude, g);
  throw ContractError("unknown scenario: " + name);
}

SnapshotSeries sample_series(const CylGrid& g, const Scenario& sc,
                             const std::vector<double>& times,
                             const std::vector<FieldKind>& kinds) {
  if (!sc.has_exact) throw ContractError("sample_series: scenario has no exact evaluator");
  SnapshotSeries series;
  for (double t : times) {
    Snapshot snap;
    snap.time = t;
    for (FieldKind k : kinds)
      snap.fields.push_back(Field::sampled(
          g, k, t, [&](double rho, double z) { return sc.exact(k, rho, z, t); }));
    series.add(std::move(snap));
  }
  return series;
}

} // namespace swirl
