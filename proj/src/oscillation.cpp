#include "swirl/oscillation.hpp"

#include <algorithm>
#include <cmath>

namespace swirl {

OscRecord measure_osc(const SnapshotSeries& s, const ParabolicCylinder& q, FieldKind kind) {
  OscRecord rec;
  rec.q = q;
  const Extrema e = region_extrema(s, q, kind);
  rec.max = e.max;
  rec.min = e.min;
  rec.osc = e.max - e.min;
  return rec;
}

std::vector<OscRecord> dyadic_scan(const SnapshotSeries& s, const ProbePoint& center,
                                   double r_min, double r_max, FieldKind kind) {
  const CylGrid& g = s.grid();
  const double h = std::max(g.h_rho(), g.h_z());
  if (!(r_min > 0.0) || !(r_max >= r_min))
    throw ContractError("dyadic_scan: need 0 < r_min <= r_max");
  if (r_min < 4.0 * h * (1.0 - 1e-12))
    throw DomainError("dyadic_scan: r_min below 4 grid cells; nodal sup/inf below grid "
                      "scale is meaningless");
  std::vector<OscRecord> out;
  for (double r = r_max; r >= r_min * (1.0 - 1e-12); r *= 0.5) {
    ParabolicCylinder q;
    q.z_center = center.z;
    q.t_top = center.t;
    q.r = r;
    out.push_back(measure_osc(s, q, kind));
  }
  return out;
}

DecayFit fit_decay(const std::vector<OscRecord>& records, double reference_R) {
  DecayFit fit;
  fit.reference_R = reference_R;
  if (!(reference_R > 0.0)) throw ContractError("fit_decay: reference R must be positive");

  const OscRecord* ref = nullptr;
  for (const auto& r : records)
    if (std::abs(r.q.r - 2.0 * reference_R) <= 1e-12 * reference_R) ref = &r;
  if (!ref)
    throw ContractError("fit_decay: records must include the reference cylinder at 2R");
  fit.osc_ref = ref->osc;

  std::vector<double> xs, ys;
  for (const auto& r : records) {
    if (r.q.r > reference_R * (1.0 + 1e-12)) continue;
    fit.radii.push_back(r.q.r);
    fit.osc.push_back(r.osc);
    if (r.osc > 0.0) {
      xs.push_back(std::log(r.q.r / (2.0 * reference_R)));
      ys.push_back(std::log(r.osc));
    }
  }
  if (xs.size() < 4 || !(fit.osc_ref > 0.0)) {
    fit.degenerate = true; // reported, not thrown
    return fit;
  }

  const std::size_t n = xs.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    mx += xs[k];
    my += ys[k];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sxx += (xs[k] - mx) * (xs[k] - mx);
    sxy += (xs[k] - mx) * (ys[k] - my);
  }
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  fit.C2 = slope;
  fit.C1 = std::exp(intercept) / fit.osc_ref;

  double ss = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double e = ys[k] - (intercept + slope * xs[k]);
    ss += e * e;
  }
  fit.residual = std::sqrt(ss / static_cast<double>(n));
  fit.C2_stderr = n > 2 ? std::sqrt(ss / static_cast<double>(n - 2) / sxx) : 0.0;

  // largest exponent for which osc(r) <= 2 (r/2R)^beta osc(2R) holds on all
  // fitted records
  double env = 1e300;
  for (std::size_t k = 0; k < n; ++k) {
    const double beta = (ys[k] - std::log(2.0 * fit.osc_ref)) / xs[k];
    env = std::min(env, beta);
  }
  fit.envelope_C2 = env;

  for (std::size_t k = 0; k < fit.radii.size(); ++k) {
    const double bound =
        fit.C1 * std::pow(fit.radii[k] / (2.0 * reference_R), fit.C2) * fit.osc_ref;
    if (fit.osc[k] > bound * (1.0 + 1e-9)) fit.violations.push_back(static_cast<int>(k));
  }
  return fit;
}

MaxPrincipleReport max_principle_monitor(const SnapshotSeries& s, double sigma0,
                                         double tol_rel) {
  if (s.empty()) throw ContractError("max_principle_monitor: empty series");
  MaxPrincipleReport rep;
  rep.sigma0 = sigma0;
  rep.tol_rel = tol_rel;
  const double bound = sigma0 * (1.0 + tol_rel);
  for (std::size_t k = 0; k < s.size(); ++k) {
    const Field* sig = s[k].find(FieldKind::swirl);
    const double sup =
        sig ? sig->max_abs() : swirl_from_vphi(s[k].get(FieldKind::v_phi)).max_abs();
    rep.times.push_back(s[k].time);
    rep.sup_abs.push_back(sup);
    if (sup > bound && rep.first_violation < 0)
      rep.first_violation = static_cast<long>(k);
  }
  rep.violated = rep.first_violation >= 0;
  return rep;
}

OscIteration iterate_osc_bound(const std::vector<double>& betas) {
  if (betas.empty()) throw ContractError("iterate_osc_bound: need at least one factor");
  OscIteration it;
  it.beta = betas;
  double log_eta = 0.0, sum_beta = 0.0;
  for (double b : betas) {
    if (!(b > 0.0) || !(b <= 1.0))
      throw ContractError("iterate_osc_bound: contraction factors must lie in (0,1]");
    log_eta += std::log1p(-0.5 * b);
    sum_beta += b;
    it.log_eta.push_back(log_eta);
    it.eta.push_back(std::exp(log_eta));
  }
  it.majorant_log = -0.5 * sum_beta;
  return it;
}

OscIteration iterate_osc_bound(const std::function<double(double)>& beta_of_r, double R,
                               int k) {
  if (!(R > 0.0) || k < 0) throw ContractError("iterate_osc_bound: need R > 0 and k >= 0");
  std::vector<double> betas;
  double r = 0.5 * R; // R / 2^{2i+1}, i = 0..k
  for (int i = 0; i <= k; ++i) {
    betas.push_back(beta_of_r(r));
    r *= 0.25;
  }
  return iterate_osc_bound(betas);
}

} // namespace swirl
