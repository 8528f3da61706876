#include "swirl/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace swirl {
namespace {

// Exact integral of the 2*pi*rho Jacobian over [a, b].
inline double jacobian_int(double a, double b) {
  return b > a ? kPi * (b * b - a * a) : 0.0;
}

struct RowExtrema {
  double mn, mx;
  std::size_t n;
};

RowExtrema extrema_row(const Snapshot& s, const SpatialWeights& w, FieldKind kind, int i) {
  const Field& f = s.get(kind);
  RowExtrema r{0.0, 0.0, 0};
  bool first = true;
  for (int j = w.j_lo; j <= w.j_hi; ++j) {
    if (w.wz(j) <= 0.0) continue;
    const double v = f(i, j);
    if (first) {
      r.mn = r.mx = v;
      first = false;
    } else {
      r.mn = std::min(r.mn, v);
      r.mx = std::max(r.mx, v);
    }
    ++r.n;
  }
  return r;
}

double measure_row(const Snapshot& s, const SpatialWeights& w, FieldKind kind, int i,
                   double threshold, bool ge) {
  const Field& f = s.get(kind);
  double acc = 0.0;
  for (int j = w.j_lo; j <= w.j_hi; ++j) {
    const bool in = ge ? (f(i, j) >= threshold) : (f(i, j) < threshold);
    if (in) acc += w.wz(j);
  }
  return w.wr(i) * acc;
}

template <bool Parallel>
Extrema extrema_impl(const Snapshot& s, const SpatialWeights& w, FieldKind kind) {
  Extrema e;
  if (w.empty()) return e;
  const int n = w.i_hi - w.i_lo + 1;
  std::vector<RowExtrema> part(static_cast<std::size_t>(n));
  if constexpr (Parallel) {
#pragma omp parallel for schedule(static)
    for (int d = 0; d < n; ++d)
      part[static_cast<std::size_t>(d)] = extrema_row(s, w, kind, w.i_lo + d);
  } else {
    for (int d = 0; d < n; ++d)
      part[static_cast<std::size_t>(d)] = extrema_row(s, w, kind, w.i_lo + d);
  }
  bool first = true;
  for (const auto& r : part) {
    if (r.n == 0) continue;
    if (first) {
      e.min = r.mn;
      e.max = r.mx;
      first = false;
    } else {
      e.min = std::min(e.min, r.mn);
      e.max = std::max(e.max, r.mx);
    }
    e.samples += r.n;
  }
  return e;
}

template <bool Parallel>
double measure_impl(const Snapshot& s, const SpatialWeights& w, FieldKind kind,
                    double threshold, bool ge) {
  if (w.empty()) return 0.0;
  const int n = w.i_hi - w.i_lo + 1;
  std::vector<double> part(static_cast<std::size_t>(n));
  if constexpr (Parallel) {
#pragma omp parallel for schedule(static)
    for (int d = 0; d < n; ++d)
      part[static_cast<std::size_t>(d)] = measure_row(s, w, kind, w.i_lo + d, threshold, ge);
  } else {
    for (int d = 0; d < n; ++d)
      part[static_cast<std::size_t>(d)] = measure_row(s, w, kind, w.i_lo + d, threshold, ge);
  }
  double total = 0.0;
  for (double x : part) total += x;
  return total;
}

} // namespace

double SpatialWeights::measure() const {
  if (empty()) return 0.0;
  double sr = 0.0, sz = 0.0;
  for (double x : w_rho) sr += x;
  for (double x : w_z) sz += x;
  return sr * sz;
}

SpatialWeights spatial_weights(const CylGrid& g, double radius, double z_lo, double z_hi) {
  g.validate();
  if (!(radius > 0.0) || !(z_hi > z_lo))
    throw ContractError("spatial_weights: need radius>0 and z_hi>z_lo");
  const double hr = g.h_rho(), hz = g.h_z();
  const double tol = 1e-12 * std::max(g.rho_max, g.z_max - g.z_min);
  // diagnostics regions keep at least one cell away from the outer boundaries
  if (radius > g.rho_max - hr + tol)
    throw DomainError("region radius reaches within one cell of rho_max");
  if (z_lo < g.z_min + hz - tol || z_hi > g.z_max - hz + tol)
    throw DomainError("region z-extent reaches within one cell of the z boundary");

  SpatialWeights w;
  w.i_lo = 0;
  w.i_hi = std::min(g.n_rho, static_cast<int>(std::floor(radius / hr + 0.5)));
  // drop trailing zero-coverage nodes (cell_lo >= radius)
  while (w.i_hi > 0 && g.rho(w.i_hi) - 0.5 * hr >= radius) --w.i_hi;
  w.w_rho.resize(static_cast<std::size_t>(w.i_hi - w.i_lo + 1));
  for (int i = w.i_lo; i <= w.i_hi; ++i) {
    const double a = std::max(0.0, g.rho(i) - 0.5 * hr);
    const double b = std::min(radius, g.rho(i) + 0.5 * hr);
    w.w_rho[static_cast<std::size_t>(i - w.i_lo)] = jacobian_int(a, b);
  }

  int jl = 0;
  while (jl < g.n_z && g.z(jl) + 0.5 * hz <= z_lo) ++jl;
  int jh = g.n_z;
  while (jh > 0 && g.z(jh) - 0.5 * hz >= z_hi) --jh;
  if (jh < jl) throw DomainError("region z-extent covers no grid cell");
  w.j_lo = jl;
  w.j_hi = jh;
  w.w_z.resize(static_cast<std::size_t>(jh - jl + 1));
  for (int j = jl; j <= jh; ++j) {
    const double a = std::max(z_lo, g.z(j) - 0.5 * hz);
    const double b = std::min(z_hi, g.z(j) + 0.5 * hz);
    w.w_z[static_cast<std::size_t>(j - jl)] = std::max(0.0, b - a);
  }
  return w;
}

SpatialWeights full_grid_weights(const CylGrid& g) {
  g.validate();
  const double hr = g.h_rho(), hz = g.h_z();
  SpatialWeights w;
  w.i_lo = 0;
  w.i_hi = g.n_rho;
  w.j_lo = 0;
  w.j_hi = g.n_z;
  w.w_rho.resize(static_cast<std::size_t>(g.ni()));
  for (int i = 0; i <= g.n_rho; ++i) {
    const double a = std::max(0.0, g.rho(i) - 0.5 * hr);
    const double b = std::min(g.rho_max, g.rho(i) + 0.5 * hr);
    w.w_rho[static_cast<std::size_t>(i)] = jacobian_int(a, b);
  }
  w.w_z.resize(static_cast<std::size_t>(g.nj()));
  for (int j = 0; j <= g.n_z; ++j) {
    const double a = std::max(g.z_min, g.z(j) - 0.5 * hz);
    const double b = std::min(g.z_max, g.z(j) + 0.5 * hz);
    w.w_z[static_cast<std::size_t>(j)] = b - a;
  }
  return w;
}

TimeWeights time_weights(const std::vector<double>& times, double t_lo, double t_hi) {
  if (times.empty()) throw ContractError("time_weights: no snapshots");
  if (!(t_hi > t_lo)) throw ContractError("time_weights: need t_hi > t_lo");
  const double span = std::max(times.back() - times.front(), 1e-300);
  const double tol = 1e-9 * span;
  if (t_lo < times.front() - tol || t_hi > times.back() + tol)
    throw DomainError("time window not covered by the sampled snapshots");
  const double a = std::max(t_lo, times.front());
  const double b = std::min(t_hi, times.back());

  const std::size_t n = times.size();
  auto cell_lo = [&](std::size_t k) {
    return k == 0 ? times[0] : 0.5 * (times[k - 1] + times[k]);
  };
  auto cell_hi = [&](std::size_t k) {
    return k + 1 == n ? times[n - 1] : 0.5 * (times[k] + times[k + 1]);
  };

  TimeWeights tw;
  std::size_t lo = 0;
  while (lo < n && cell_hi(lo) <= a) ++lo;
  std::size_t hi = n;
  while (hi > 0 && cell_lo(hi - 1) >= b) --hi;
  if (hi <= lo) { // window inside a single cell gap
    tw.k_lo = 1;
    tw.k_hi = 0;
    return tw;
  }
  tw.k_lo = lo;
  tw.k_hi = hi - 1;
  tw.w.resize(tw.k_hi - tw.k_lo + 1);
  for (std::size_t k = tw.k_lo; k <= tw.k_hi; ++k) {
    const double la = std::max(a, cell_lo(k));
    const double lb = std::min(b, cell_hi(k));
    tw.w[k - tw.k_lo] = std::max(0.0, lb - la);
  }
  return tw;
}

double integrate_lp(const SnapshotSeries& s, const ParabolicCylinder& q, double p_space,
                    std::optional<double> p_time, FieldKind kind) {
  return integrate_lp_fn(s, q, p_space, p_time,
                         [kind](const Snapshot& snap, int i, int j) {
                           return snap.get(kind)(i, j);
                         });
}

double integrate_lp_speed(const SnapshotSeries& s, const ParabolicCylinder& q,
                          double p_space, std::optional<double> p_time) {
  return integrate_lp_fn(s, q, p_space, p_time, [](const Snapshot& snap, int i, int j) {
    const double vr = snap.get(FieldKind::v_rho)(i, j);
    const double vp = snap.get(FieldKind::v_phi)(i, j);
    const double vz = snap.get(FieldKind::v_axial)(i, j);
    return std::sqrt(vr * vr + vp * vp + vz * vz);
  });
}

Extrema snapshot_extrema(const Snapshot& s, const SpatialWeights& w, FieldKind kind) {
  return extrema_impl<true>(s, w, kind);
}

Extrema region_extrema(const SnapshotSeries& s, const ParabolicCylinder& q, FieldKind kind) {
  q.validate();
  const SpatialWeights sw = spatial_weights(s.grid(), q.spatial_radius(), q.z_lo(), q.z_hi());
  const TimeWeights tw = time_weights(s.times(), q.t_lo(), q.t_hi());
  Extrema e;
  if (tw.empty()) throw DomainError("region_extrema: no snapshot covers the time window");
  bool first = true;
  for (std::size_t k = tw.k_lo; k <= tw.k_hi; ++k) {
    if (tw.wt(k) <= 0.0) continue;
    const Extrema ek = snapshot_extrema(s[k], sw, kind);
    if (ek.samples == 0) continue;
    if (first) {
      e = ek;
      first = false;
    } else {
      e.min = std::min(e.min, ek.min);
      e.max = std::max(e.max, ek.max);
      e.samples += ek.samples;
    }
  }
  if (e.samples == 0) throw DomainError("region_extrema: empty sample set");
  return e;
}

double measure_ge(const Snapshot& s, const SpatialWeights& w, FieldKind kind, double threshold) {
  return measure_impl<true>(s, w, kind, threshold, true);
}

double measure_lt(const Snapshot& s, const SpatialWeights& w, FieldKind kind, double threshold) {
  return measure_impl<true>(s, w, kind, threshold, false);
}

double min_value(const Snapshot& s, const SpatialWeights& w, FieldKind kind) {
  const Extrema e = extrema_impl<true>(s, w, kind);
  if (e.samples == 0) throw DomainError("min_value: empty sample set");
  return e.min;
}

namespace ref {

double integrate_lp(const SnapshotSeries& s, const ParabolicCylinder& q, double p_space,
                    std::optional<double> p_time, FieldKind kind) {
  q.validate();
  const SpatialWeights sw = spatial_weights(s.grid(), q.spatial_radius(), q.z_lo(), q.z_hi());
  const TimeWeights tw = time_weights(s.times(), q.t_lo(), q.t_hi());
  double bulk = 0.0;
  auto f = [kind](const Snapshot& snap, int i, int j) { return snap.get(kind)(i, j); };
  for (std::size_t k = tw.k_lo; k <= tw.k_hi && !tw.empty(); ++k) {
    const double wt = tw.wt(k);
    if (wt == 0.0) continue;
    double a = 0.0;
    for (int i = sw.i_lo; i <= sw.i_hi; ++i)
      a += detail::row_lp_sum(s[k], sw, p_space, i, f);
    bulk += wt * (p_time ? std::pow(a, *p_time) : a);
  }
  return p_time ? std::pow(bulk, 1.0 / *p_time) : std::pow(bulk, 1.0 / p_space);
}

Extrema snapshot_extrema(const Snapshot& s, const SpatialWeights& w, FieldKind kind) {
  return extrema_impl<false>(s, w, kind);
}

double measure_ge(const Snapshot& s, const SpatialWeights& w, FieldKind kind, double threshold) {
  return measure_impl<false>(s, w, kind, threshold, true);
}

} // namespace ref
} // namespace swirl
