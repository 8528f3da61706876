#include "swirl/lemma_harness.hpp"

#include <algorithm>
#include <cmath>

namespace swirl {
namespace {

SnapshotSeries transform_series(const SnapshotSeries& src, FieldKind src_kind,
                                const std::function<double(double)>& f) {
  SnapshotSeries out;
  for (std::size_t k = 0; k < src.size(); ++k) {
    const Field& in = src[k].get(src_kind);
    Field field(in.grid(), FieldKind::scalar, src[k].time);
    auto iv = in.values();
    auto ov = field.values();
    for (std::size_t n = 0; n < iv.size(); ++n) ov[n] = f(iv[n]);
    Snapshot snap;
    snap.time = src[k].time;
    snap.fields.push_back(std::move(field));
    out.add(std::move(snap));
  }
  return out;
}

// covered snapshot indices of a time window
std::vector<std::size_t> covered(const TimeWeights& tw) {
  std::vector<std::size_t> out;
  for (std::size_t k = tw.k_lo; k <= tw.k_hi && !tw.empty(); ++k)
    if (tw.wt(k) > 0.0) out.push_back(k);
  return out;
}

} // namespace

PiConstruction pi_from_swirl(const SnapshotSeries& run, const ProbePoint& probe, double R) {
  ParabolicCylinder q2;
  q2.z_center = probe.z;
  q2.t_top = probe.t;
  q2.r = 2.0 * R;
  const Extrema e = region_extrema(run, q2, FieldKind::swirl);
  PiConstruction out;
  out.sigma_sup = e.max;
  out.sigma_inf = e.min;
  out.k_R = 0.5 * (e.max - e.min);
  out.M0 = 2.0;
  const double m = e.max;
  out.pi = transform_series(run, FieldKind::swirl, [m](double s) { return m - s; });
  return out;
}

GrowthLedger verify_growth_lemmas(const SnapshotSeries& pi_series,
                                  const SnapshotSeries* velocity,
                                  const HarnessParams& p) {
  if (!(p.k_R > 0.0)) throw ContractError("verify_growth_lemmas: need k_R > 0");
  p.gauge.validate();

  GrowthLedger led;
  led.params = p;
  const FieldKind kind = FieldKind::scalar;
  const CylGrid& g = pi_series.grid();
  const double R = p.R;
  const double t0 = p.probe.t;

  auto skipped_all = [&](const std::string& why) {
    for (const char* name : {"sup-bound", "growth-persistence", "measure-shrink",
                             "measure-to-pointwise", "level-set-density"}) {
      LemmaRow row;
      row.lemma = name;
      row.status = "skipped: " + why;
      led.rows.push_back(row);
    }
    return led;
  };

  SpatialWeights sw2, swR;
  TimeWeights tw2;
  try {
    sw2 = spatial_weights(g, 2.0 * R, p.probe.z - 2.0 * R, p.probe.z + 2.0 * R);
    swR = spatial_weights(g, R, p.probe.z - R, p.probe.z + R);
    tw2 = time_weights(pi_series.times(), t0 - 4.0 * R * R, t0);
  } catch (const DomainError& e) {
    return skipped_all(std::string("probe outside the sampled domain (") + e.what() + ")");
  }
  const auto snaps2 = covered(tw2);
  if (snaps2.empty()) return skipped_all("time window covers no snapshots");

  // contract: pi nonnegative on Q(2R)
  double pi_min = 0.0, pi_max = 0.0;
  bool first = true;
  for (std::size_t k : snaps2) {
    const Extrema e = snapshot_extrema(pi_series[k], sw2, kind);
    if (e.samples == 0) continue;
    if (first) {
      pi_min = e.min;
      pi_max = e.max;
      first = false;
    } else {
      pi_min = std::min(pi_min, e.min);
      pi_max = std::max(pi_max, e.max);
    }
  }
  if (pi_min < -1e-12 * std::max(1.0, p.k_R))
    throw ContractError("verify_growth_lemmas: pi must be nonnegative on Q(2R)");

  // gate: pi >= k_R on the axis inside Q(2R)
  double axis_min = 1e300;
  for (std::size_t k : snaps2) {
    const Field& f = pi_series[k].get(kind);
    for (int j = sw2.j_lo; j <= sw2.j_hi; ++j)
      if (sw2.wz(j) > 0.0) axis_min = std::min(axis_min, f(0, j));
  }
  if (axis_min < p.k_R * (1.0 - 1e-12))
    return skipped_all("precondition: pi does not dominate k_R on the axis of Q(2R)");

  led.f2R = velocity ? eval_f(*velocity, p.probe, 2.0 * R) : 0.0;
  led.M2R = velocity ? eval_M(*velocity, p.probe, 2.0 * R) : 0.0;
  led.M0 = std::max(1.0, pi_max / p.k_R);

  const double region_nodal = swR.measure();
  // one boundary-cell layer of C(R): the lateral ring plus the two z caps
  const double slack = 4.0 * kPi * R * R * g.h_rho() + 2.0 * kPi * R * R * g.h_z();
  const double theta_avail =
      std::min(1.0, (t0 - pi_series.t_first()) / (R * R) * (1.0 - 1e-9));
  double snap_gap = 0.0;
  const auto ts = pi_series.times();
  for (std::size_t k = 1; k < ts.size(); ++k)
    snap_gap = std::max(snap_gap, ts[k] - ts[k - 1]);

  auto add_row = [&](LemmaRow row) { led.rows.push_back(std::move(row)); };

  // ---- sup of the truncation vs the mean-power bound
  {
    LemmaRow row;
    row.lemma = "sup-bound";
    try {
      const double k = p.k_R;
      SnapshotSeries trunc = transform_series(
          pi_series, kind, [k](double v) { return std::max(0.0, k - v); });
      ParabolicCylinder q_out;
      q_out.z_center = p.probe.z;
      q_out.t_top = t0;
      q_out.r = R;
      q_out.lambda = p.tau;
      q_out.mu = p.gamma;
      ParabolicCylinder q_in = q_out;
      q_in.lambda = p.tau1;
      q_in.mu = p.gamma1;

      const double c1 = const_c1(p.tau1, p.tau, p.gamma1, p.gamma, led.M2R, p.c);
      const double sup_in = region_extrema(trunc, q_in, kind).max;
      const double norm = integrate_lp(trunc, q_out, 10.0 / 3.0, std::nullopt, kind);
      const double mean = std::pow(norm, 10.0 / 3.0) / q_out.spacetime_volume();
      const double rhs = c1 * std::pow(mean, 0.3);
      row.hypothesis_holds = true;
      row.conclusion_holds = sup_in <= rhs * (1.0 + 1e-9) + 1e-300;
      row.margins["sup_inner"] = sup_in;
      row.margins["bound"] = rhs;
      row.margins["c1"] = c1;
    } catch (const DomainError& e) {
      row.status = std::string("skipped: ") + e.what();
    }
    add_row(row);
  }

  // ---- large-measure positivity propagates over a theta0 window
  {
    LemmaRow row;
    row.lemma = "growth-persistence";
    try {
      const double theta0 = const_theta0(p.delta0, led.f2R, p.c);
      const double theta = std::min(theta0, theta_avail);
      if (!(theta > 0.0)) throw DomainError("no usable time window before the probe");
      const double k0 = p.k_R;
      const std::size_t k_hyp = pi_series.nearest(t0 - theta * R * R);
      const double hyp_measure = measure_ge(pi_series[k_hyp], swR, kind, k0);
      row.hypothesis_holds = hyp_measure > p.delta0 * region_nodal;
      bool concl = true;
      double worst = 1e300;
      const TimeWeights twin = time_weights(pi_series.times(), t0 - theta * R * R, t0);
      std::vector<std::size_t> idx = covered(twin);
      if (idx.empty()) idx.push_back(k_hyp);
      for (std::size_t k : idx) {
        const double m = measure_ge(pi_series[k], swR, kind, p.delta0 / 3.0 * k0);
        worst = std::min(worst, m - (p.delta0 / 3.0 * region_nodal - slack));
        if (m <= p.delta0 / 3.0 * region_nodal - slack) concl = false;
      }
      row.conclusion_holds = concl;
      row.margins["theta_used"] = theta;
      row.margins["hyp_fraction"] = hyp_measure / region_nodal;
      row.margins["worst_margin"] = worst;
    } catch (const DomainError& e) {
      row.status = std::string("skipped: ") + e.what();
    }
    add_row(row);
  }

  // ---- sub-level measure after s halvings of the level
  {
    LemmaRow row;
    row.lemma = "measure-shrink";
    try {
      const double theta1 = std::min(p.theta1, theta_avail);
      if (!(theta1 > 0.0)) throw DomainError("no usable time window before the probe");
      const double k1 = p.k_R;
      const TimeWeights twin = time_weights(pi_series.times(), t0 - theta1 * R * R, t0);
      const auto idx = covered(twin);
      if (idx.empty()) throw DomainError("window covers no snapshots");
      bool hyp = true;
      for (std::size_t k : idx)
        if (measure_ge(pi_series[k], swR, kind, k1) < p.delta1 * region_nodal) hyp = false;
      const double s = const_s(p.delta1, p.mu1, theta1, led.f2R, p.c);
      const double threshold = std::exp2(-s) * k1; // underflows to 0 for large s
      double st_measure = 0.0, st_total = 0.0;
      for (std::size_t k : idx) {
        st_measure += twin.wt(k) * measure_lt(pi_series[k], swR, kind, threshold);
        st_total += twin.wt(k) * region_nodal;
      }
      const double slack_st = slack * theta1 * R * R + region_nodal * snap_gap;
      row.hypothesis_holds = hyp;
      row.conclusion_holds = st_measure <= p.mu1 * st_total + slack_st;
      row.margins["s"] = s;
      row.margins["sublevel_fraction"] = st_total > 0.0 ? st_measure / st_total : 0.0;
      row.margins["mu1"] = p.mu1;
    } catch (const DomainError& e) {
      row.status = std::string("skipped: ") + e.what();
    }
    add_row(row);
  }

  // ---- small sub-level measure forces a pointwise lower bound
  {
    LemmaRow row;
    row.lemma = "measure-to-pointwise";
    try {
      const double theta = std::min(p.theta1, theta_avail);
      if (!(theta > 0.0)) throw DomainError("no usable time window before the probe");
      ParabolicCylinder q_out;
      q_out.z_center = p.probe.z;
      q_out.t_top = t0;
      q_out.r = R;
      q_out.lambda = 1.0;
      q_out.mu = theta;
      const double pi_floor = region_extrema(pi_series, q_out, kind).min;
      const double k_cor = 0.5 * pi_floor;
      const double c1 = const_c1(p.lambda1, 1.0, 0.5 * theta, theta, led.M2R, p.c);
      const double mu_star = const_mu_star(c1);
      const TimeWeights twin = time_weights(pi_series.times(), q_out.t_lo(), t0);
      double st_measure = 0.0, st_total = 0.0;
      for (std::size_t k : covered(twin)) {
        st_measure += twin.wt(k) * measure_lt(pi_series[k], swR, kind, k_cor);
        st_total += twin.wt(k) * region_nodal;
      }
      row.hypothesis_holds = k_cor > 0.0 && st_measure < mu_star * st_total;
      ParabolicCylinder q_in = q_out;
      q_in.lambda = p.lambda1;
      q_in.mu = 0.5 * theta;
      const double floor_in = region_extrema(pi_series, q_in, kind).min;
      row.conclusion_holds = floor_in >= 0.5 * k_cor * (1.0 - 1e-12);
      row.margins["k"] = k_cor;
      row.margins["mu_star"] = mu_star;
      row.margins["inner_floor"] = floor_in;
    } catch (const DomainError& e) {
      row.status = std::string("skipped: ") + e.what();
    }
    add_row(row);
  }

  // ---- a definite-measure level set at some t_bar in [t0-R^2, t0-(3/4)R^2]
  {
    LemmaRow row;
    row.lemma = "level-set-density";
    try {
      auto kd = const_kappa0_delta0(led.f2R, led.M0, p.c);
      const double kappa0 = kd.first, delta0 = kd.second;
      const LevelSetReport rep = level_sets(pi_series, p.probe, R, kappa0, p.k_R, kind);
      double e_max = 0.0;
      for (double m : rep.e_measure) e_max = std::max(e_max, m);
      row.hypothesis_holds = pi_max <= led.M0 * p.k_R * (1.0 + 1e-12);
      row.conclusion_holds =
          e_max >= delta0 * region_nodal - slack && rep.mean_value_ok;
      row.margins["kappa0"] = kappa0;
      row.margins["delta0"] = delta0;
      row.margins["best_fraction"] = e_max / region_nodal;
      row.margins["mean_value_ok"] = rep.mean_value_ok ? 1.0 : 0.0;
    } catch (const DomainError& e) {
      row.status = std::string("skipped: ") + e.what();
    }
    add_row(row);
  }

  return led;
}

} // namespace swirl
