#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "swirl/field.hpp"

namespace swirl {

/// Per-axis clipped node weights of a spatial cylinder {rho < radius,
/// z_lo < z < z_hi} on a grid.  Every node owns the cell
/// [rho_i - h/2, rho_i + h/2] x [z_j - h/2, z_j + h/2] clipped to the domain;
/// cells straddling the region boundary contribute their covered fraction,
/// with the radial weight the exact integral of the 2*pi*rho Jacobian over
/// the covered radial interval.  A node participates (sup/inf sampling and
/// quadrature alike) iff its coverage is positive.
struct SpatialWeights {
  int i_lo = 0, i_hi = -1; // inclusive node ranges with coverage > 0
  int j_lo = 0, j_hi = -1;
  std::vector<double> w_rho; // exact integral of 2*pi*rho over the clipped radial cell
  std::vector<double> w_z;   // clipped z cell length

  bool empty() const { return i_hi < i_lo || j_hi < j_lo; }
  double wr(int i) const { return w_rho[static_cast<std::size_t>(i - i_lo)]; }
  double wz(int j) const { return w_z[static_cast<std::size_t>(j - j_lo)]; }
  /// Total covered measure (node-cell approximation of the region volume).
  double measure() const;
};

/// Weights for the region {rho < radius, z_lo < z < z_hi}.  Regions must keep
/// at least one cell away from the outer grid boundaries; violations raise
/// DomainError.
SpatialWeights spatial_weights(const CylGrid& g, double radius, double z_lo, double z_hi);

/// Whole-domain weights (no margin requirement); used for global integrals.
SpatialWeights full_grid_weights(const CylGrid& g);

/// Snapshot-time midpoint cells clipped to the window [t_lo, t_hi].  The
/// window must lie within the sampled time range (tolerance 1e-9 of the
/// span); DomainError otherwise.
struct TimeWeights {
  std::size_t k_lo = 1, k_hi = 0; // inclusive; k_hi < k_lo means empty
  std::vector<double> w;

  bool empty() const { return k_hi < k_lo; }
  double wt(std::size_t k) const { return w[k - k_lo]; }
};

TimeWeights time_weights(const std::vector<double>& times, double t_lo, double t_hi);

namespace detail {

inline double pow_p(double v, double p) {
  if (p == 1.0) return v;
  if (p == 2.0) return v * v;
  if (p == 3.0) return v * v * v;
  return std::pow(v, p);
}

template <class F>
double row_lp_sum(const Snapshot& s, const SpatialWeights& w, double p, int i, F&& f) {
  double acc = 0.0;
  for (int j = w.j_lo; j <= w.j_hi; ++j)
    acc += w.wz(j) * pow_p(std::abs(f(s, i, j)), p);
  return w.wr(i) * acc;
}

} // namespace detail

/// sum over covered nodes of  w_rho * w_z * |f|^p  at one time level.
/// Parallel over radial rows; the row partials are combined in index order,
/// so the result is independent of the thread count and bitwise equal to the
/// serial reference.
template <class F>
double spatial_lp_sum(const Snapshot& s, const SpatialWeights& w, double p, F&& f) {
  if (w.empty()) return 0.0;
  const int n = w.i_hi - w.i_lo + 1;
  std::vector<double> part(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
  for (int d = 0; d < n; ++d)
    part[static_cast<std::size_t>(d)] = detail::row_lp_sum(s, w, p, w.i_lo + d, f);
  double total = 0.0;
  for (double x : part) total += x;
  return total;
}

/// Mixed-norm quadrature over a parabolic cylinder.  With
/// A(t) = integral of |f|^{p_space} over the cross-section, returns
///   (integral of A(t)^{p_time} dt)^{1/p_time}        if p_time is given,
///   (space-time integral of |f|^{p_space})^{1/p_space} otherwise.
template <class F>
double integrate_lp_fn(const SnapshotSeries& s, const ParabolicCylinder& q,
                       double p_space, std::optional<double> p_time, F&& f) {
  q.validate();
  if (!(p_space > 0.0)) throw ContractError("integrate_lp: p_space must be positive");
  if (p_time && !(*p_time > 0.0)) throw ContractError("integrate_lp: p_time must be positive");
  const SpatialWeights sw = spatial_weights(s.grid(), q.spatial_radius(), q.z_lo(), q.z_hi());
  const TimeWeights tw = time_weights(s.times(), q.t_lo(), q.t_hi());
  double bulk = 0.0;
  for (std::size_t k = tw.k_lo; k <= tw.k_hi && !tw.empty(); ++k) {
    const double wt = tw.wt(k);
    if (wt == 0.0) continue;
    const double a = spatial_lp_sum(s[k], sw, p_space, f);
    bulk += wt * (p_time ? std::pow(a, *p_time) : a);
  }
  return p_time ? std::pow(bulk, 1.0 / *p_time) : std::pow(bulk, 1.0 / p_space);
}

/// Mixed norm of |field| of the given kind.
double integrate_lp(const SnapshotSeries& s, const ParabolicCylinder& q,
                    double p_space, std::optional<double> p_time, FieldKind kind);

/// Mixed norm of the velocity magnitude sqrt(v_rho^2 + v_phi^2 + v_axial^2).
double integrate_lp_speed(const SnapshotSeries& s, const ParabolicCylinder& q,
                          double p_space, std::optional<double> p_time);

/// Nodal extrema over a region (covered nodes) and time window (covered
/// snapshots).  DomainError if the sample set is empty.
struct Extrema {
  double min = 0.0;
  double max = 0.0;
  std::size_t samples = 0;
  double osc() const { return max - min; }
};

Extrema region_extrema(const SnapshotSeries& s, const ParabolicCylinder& q, FieldKind kind);
Extrema snapshot_extrema(const Snapshot& s, const SpatialWeights& w, FieldKind kind);

/// 2*pi*rho-weighted measure of {value >= threshold} / {value < threshold}
/// within the weighted region at one time level.
double measure_ge(const Snapshot& s, const SpatialWeights& w, FieldKind kind, double threshold);
double measure_lt(const Snapshot& s, const SpatialWeights& w, FieldKind kind, double threshold);

/// Minimum field value over the covered nodes at one time level.
double min_value(const Snapshot& s, const SpatialWeights& w, FieldKind kind);

// Serial reference implementations (identical arithmetic order).
namespace ref {
double integrate_lp(const SnapshotSeries& s, const ParabolicCylinder& q,
                    double p_space, std::optional<double> p_time, FieldKind kind);
Extrema snapshot_extrema(const Snapshot& s, const SpatialWeights& w, FieldKind kind);
double measure_ge(const Snapshot& s, const SpatialWeights& w, FieldKind kind, double threshold);
} // namespace ref

} // namespace swirl
