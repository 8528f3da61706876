#include "swirl/level_sets.hpp"

#include <algorithm>
#include <cmath>

namespace swirl {

LevelSetReport level_sets(const SnapshotSeries& pi, const ProbePoint& z0, double R,
                          double kappa, double k_R, FieldKind kind) {
  if (!(R > 0.0)) throw ContractError("level_sets: need R > 0");
  if (!(k_R > 0.0)) throw ContractError("level_sets: need k_R > 0");
  if (kappa < 0.0) throw ContractError("level_sets: need kappa >= 0");

  const CylGrid& g = pi.grid();
  const SpatialWeights w = spatial_weights(g, R, z0.z - R, z0.z + R);
  const double t_lo = z0.t - R * R;
  const double t_hi = z0.t - 0.75 * R * R;
  const TimeWeights tw = time_weights(pi.times(), t_lo, t_hi);
  if (tw.empty()) throw DomainError("level_sets: time window covers no snapshots");

  LevelSetReport rep;
  rep.R = R;
  rep.kappa = kappa;
  rep.k_R = k_R;
  rep.region_measure = 2.0 * kPi * R * R * R;
  rep.window_measure = rep.region_measure * 0.25 * R * R;

  const double threshold = kappa * k_R;
  double e_max = -1.0;
  for (std::size_t k = tw.k_lo; k <= tw.k_hi; ++k) {
    const Snapshot& snap = pi[k];
    const Extrema ex = snapshot_extrema(snap, w, kind);
    if (ex.samples > 0 && ex.min < -1e-12 * std::max(1.0, k_R))
      throw ContractError("level_sets: pi must be nonnegative on the probe");
    const double m = measure_ge(snap, w, kind, threshold);
    rep.times.push_back(snap.time);
    rep.e_measure.push_back(m);
    rep.e_fraction.push_back(m / rep.region_measure);
    rep.E_measure += tw.wt(k) * m;
    if (m > e_max) {
      e_max = m;
      rep.t_bar = snap.time;
      rep.t_bar_index = rep.times.size() - 1;
    }
  }
  rep.E_fraction = rep.E_measure / rep.window_measure;
  rep.mean_value_ok = e_max * 0.25 * R * R >= rep.E_measure * (1.0 - 1e-12);
  return rep;
}

} // namespace swirl
