#include "swirl/criterion.hpp"

#include <algorithm>
#include <cmath>

#include "swirl/calculus.hpp"

namespace swirl {
namespace {

ParabolicCylinder probe_cylinder(const ProbePoint& z0, double R) {
  ParabolicCylinder q;
  q.z_center = z0.z;
  q.t_top = z0.t;
  q.r = R;
  return q;
}

double smoothstep(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  return s * s * (3.0 - 2.0 * s);
}

double smoothstep_deriv(double s) {
  if (s <= 0.0 || s >= 1.0) return 0.0;
  return 6.0 * s * (1.0 - s);
}

} // namespace

double eval_g(double R, const GaugeParams& p) {
  p.validate();
  if (!(R > 0.0) || R > 2.0 / 3.0)
    throw DomainError("eval_g: R must lie in (0, 2/3]");
  const double w = std::log(1.0 / R); // > 0 on the domain
  const double inner = 0.5 * std::log(w);
  if (!(inner > 0.0)) return 1.0; // clamp region: double log at or below zero
  return std::max(1.0, p.c_star * std::pow(inner, p.alpha));
}

double eval_f(const SnapshotSeries& s, const ProbePoint& z0, double R) {
  const ParabolicCylinder q = probe_cylinder(z0, R);
  const double norm = integrate_lp_speed(s, q, 3.0, 4.0 / 3.0);
  return norm / std::sqrt(R);
}

double eval_M(const SnapshotSeries& s, const ProbePoint& z0, double R) {
  const ParabolicCylinder q = probe_cylinder(z0, R);
  const double norm = integrate_lp_speed(s, q, 10.0 / 3.0, std::nullopt);
  return norm / std::sqrt(R);
}

double eval_sigma0(const SnapshotSeries& s) {
  if (s.empty()) throw ContractError("eval_sigma0: empty series");
  const Snapshot& first = s[0];
  if (const Field* sig = first.find(FieldKind::swirl)) return sig->max_abs();
  const Field sig = swirl_from_vphi(first.get(FieldKind::v_phi));
  return sig.max_abs();
}

CriterionReport scan_condition(const SnapshotSeries& s, const std::vector<ProbePoint>& probes,
                               const std::vector<double>& radii, const GaugeParams& gauge) {
  gauge.validate();
  if (probes.empty() || radii.empty())
    throw ContractError("scan_condition: need at least one probe and one radius");

  std::vector<double> rs = radii;
  std::sort(rs.begin(), rs.end());

  // validate all probes up front; failures of the condition are data, but a
  // probe outside the sampled domain is an input error
  for (const auto& p : probes)
    for (double R : rs) {
      if (!(R > 0.0) || R > 2.0 / 3.0)
        throw DomainError("scan_condition: radii must lie in (0, 2/3]");
      const ParabolicCylinder q = probe_cylinder(p, R);
      (void)spatial_weights(s.grid(), q.spatial_radius(), q.z_lo(), q.z_hi());
      (void)time_weights(s.times(), q.t_lo(), q.t_hi());
    }

  CriterionReport rep;
  rep.gauge = gauge;
  rep.sigma0 = eval_sigma0(s);
  for (double R : rs) {
    for (const auto& p : probes) {
      CriterionRecord rec;
      rec.z0 = p;
      rec.R = R;
      rec.f = eval_f(s, p, R);
      rec.M = eval_M(s, p, R);
      rec.g = eval_g(R, gauge);
      rec.margin = rec.g - (rec.f + rec.M);
      rec.pass = rec.margin >= 0.0;
      rep.records.push_back(rec);
    }
  }
  rep.worst_margin = rep.records.front().margin;
  for (const auto& rec : rep.records) {
    rep.worst_margin = std::min(rep.worst_margin, rec.margin);
    if (!rec.pass && !rep.first_failure) rep.first_failure = rec;
  }
  rep.pass = rep.worst_margin >= 0.0;
  return rep;
}

// ------------------------------------------------- local energy inequality

double EnergyBump::phi(double rho, double z, double t) const {
  const double dz = z - z_center;
  const double u = (rho * rho + dz * dz) / (radius * radius);
  if (u >= 1.0) return 0.0;
  const double b = (1.0 - u) * (1.0 - u);
  return b * smoothstep((t - t_start) / (t_ramp - t_start));
}

double EnergyBump::dphi_dt(double rho, double z, double t) const {
  const double dz = z - z_center;
  const double u = (rho * rho + dz * dz) / (radius * radius);
  if (u >= 1.0) return 0.0;
  const double b = (1.0 - u) * (1.0 - u);
  const double s = (t - t_start) / (t_ramp - t_start);
  return b * smoothstep_deriv(s) / (t_ramp - t_start);
}

double EnergyBump::dphi_drho(double rho, double z, double t) const {
  const double dz = z - z_center;
  const double a2 = radius * radius;
  const double u = (rho * rho + dz * dz) / a2;
  if (u >= 1.0) return 0.0;
  return -4.0 * rho * (1.0 - u) / a2 * smoothstep((t - t_start) / (t_ramp - t_start));
}

double EnergyBump::dphi_dz(double rho, double z, double t) const {
  const double dz = z - z_center;
  const double a2 = radius * radius;
  const double u = (rho * rho + dz * dz) / a2;
  if (u >= 1.0) return 0.0;
  return -4.0 * dz * (1.0 - u) / a2 * smoothstep((t - t_start) / (t_ramp - t_start));
}

double EnergyBump::laplacian(double rho, double z, double t) const {
  // cylindrical laplacian of ((1-u)_+)^2, u = (rho^2 + (z-zc)^2)/a^2:
  //   d_rr + (1/rho) d_r + d_zz = -12 (1-u)/a^2 + 8 u / a^2
  const double dz = z - z_center;
  const double a2 = radius * radius;
  const double u = (rho * rho + dz * dz) / a2;
  if (u >= 1.0) return 0.0;
  return (-12.0 * (1.0 - u) + 8.0 * u) / a2 *
         smoothstep((t - t_start) / (t_ramp - t_start));
}

double energy_inequality_residual(const SnapshotSeries& s, const EnergyBump& bump) {
  if (s.empty()) throw ContractError("energy_inequality_residual: empty series");
  if (!s[0].find(FieldKind::pressure))
    throw ContractError("energy_inequality_residual: pressure snapshots required");
  const CylGrid& g = s.grid();
  if (!(bump.radius > 0.0) || !(bump.t_ramp > bump.t_start) ||
      !(bump.t_eval > bump.t_start))
    throw ContractError("energy_inequality_residual: malformed bump");
  // support must sit inside the sampled domain
  if (bump.radius > g.rho_max - g.h_rho() ||
      bump.z_center - bump.radius < g.z_min + g.h_z() ||
      bump.z_center + bump.radius > g.z_max - g.h_z())
    throw DomainError("energy bump support exceeds the sampled domain");

  const SpatialWeights w = full_grid_weights(g);
  const TimeWeights tw = time_weights(s.times(), bump.t_start, bump.t_eval);
  if (tw.empty()) throw DomainError("energy bump time window covers no snapshots");

  const int ni = g.ni(), nj = g.nj();

  // |grad w|^2 in cylindrical coordinates for an axisymmetric field,
  // including the (v_rho^2 + v_phi^2)/rho^2 terms with their axis limits.
  auto grad_sq_term = [&](const Snapshot& snap) {
    const Field& vr = snap.get(FieldKind::v_rho);
    const Field& vp = snap.get(FieldKind::v_phi);
    const Field& vz = snap.get(FieldKind::v_axial);
    auto [dr_vr, dz_vr] = cyl_gradient(vr);
    auto [dr_vp, dz_vp] = cyl_gradient(vp);
    auto [dr_vz, dz_vz] = cyl_gradient(vz);
    Field out(g, FieldKind::scalar, snap.time);
    for (int i = 0; i < ni; ++i) {
      const double rho = g.rho(i);
      for (int j = 0; j < nj; ++j) {
        const double vror = i == 0 ? dr_vr(0, j) : vr(i, j) / rho;
        const double vpor = i == 0 ? dr_vp(0, j) : vp(i, j) / rho;
        const double sq = dr_vr(i, j) * dr_vr(i, j) + dz_vr(i, j) * dz_vr(i, j) +
                          dr_vp(i, j) * dr_vp(i, j) + dz_vp(i, j) * dz_vp(i, j) +
                          dr_vz(i, j) * dr_vz(i, j) + dz_vz(i, j) * dz_vz(i, j) +
                          vror * vror + vpor * vpor;
        out(i, j) = sq;
      }
    }
    return out;
  };

  auto spatial_sum = [&](const std::function<double(int, int)>& f) {
    double total = 0.0;
    for (int i = 0; i < ni; ++i) {
      double row = 0.0;
      for (int j = 0; j < nj; ++j) row += w.wz(j) * f(i, j);
      total += w.wr(i) * row;
    }
    return total;
  };

  double lhs_bulk = 0.0, rhs_bulk = 0.0;
  for (std::size_t k = tw.k_lo; k <= tw.k_hi; ++k) {
    const double wt = tw.wt(k);
    if (wt <= 0.0) continue;
    const Snapshot& snap = s[k];
    const double t = snap.time;
    const Field& vr = snap.get(FieldKind::v_rho);
    const Field& vp = snap.get(FieldKind::v_phi);
    const Field& vz = snap.get(FieldKind::v_axial);
    const Field& q = snap.get(FieldKind::pressure);
    const Field gw = grad_sq_term(snap);

    lhs_bulk += wt * 2.0 * spatial_sum([&](int i, int j) {
      return bump.phi(g.rho(i), g.z(j), t) * gw(i, j);
    });
    rhs_bulk += wt * spatial_sum([&](int i, int j) {
      const double rho = g.rho(i), z = g.z(j);
      const double w2 = vr(i, j) * vr(i, j) + vp(i, j) * vp(i, j) + vz(i, j) * vz(i, j);
      const double transport = vr(i, j) * bump.dphi_drho(rho, z, t) +
                               vz(i, j) * bump.dphi_dz(rho, z, t);
      return w2 * (bump.dphi_dt(rho, z, t) + bump.laplacian(rho, z, t)) +
             transport * (w2 + 2.0 * q(i, j));
    });
  }

  const Snapshot& last = s[s.nearest(bump.t_eval)];
  {
    const Field& vr = last.get(FieldKind::v_rho);
    const Field& vp = last.get(FieldKind::v_phi);
    const Field& vz = last.get(FieldKind::v_axial);
    lhs_bulk += spatial_sum([&](int i, int j) {
      const double w2 = vr(i, j) * vr(i, j) + vp(i, j) * vp(i, j) + vz(i, j) * vz(i, j);
      return bump.phi(g.rho(i), g.z(j), last.time) * w2;
    });
  }
  return rhs_bulk - lhs_bulk;
}

} // namespace swirl
