// Test-only oracles and sample-data builders.  Everything here is
// independent of the implementation paths it checks: Monte-Carlo point
// counting for measures, long-double arithmetic for products, plain closed
// forms for the exact scenarios.
#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "swirl/field.hpp"
#include "swirl/grid.hpp"

namespace oracle {

// Space-time measure of Q^{lambda,mu}(r) by Monte-Carlo point counting in
// the bounding box [-a,a]^2 x [-a,a] x [0, mu r^2], a = lambda r.
inline double mc_cylinder_measure(const swirl::ParabolicCylinder& q, long samples,
                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double a = q.lambda * q.r;
  const double tlen = q.mu * q.r * q.r;
  std::uniform_real_distribution<double> u(-a, a);
  long hits = 0;
  for (long k = 0; k < samples; ++k) {
    const double x = u(rng), y = u(rng), z = u(rng);
    (void)z; // z always inside the box's |z| < a slab
    if (x * x + y * y < a * a) ++hits;
  }
  const double box = (2.0 * a) * (2.0 * a) * (2.0 * a) * tlen;
  return box * static_cast<double>(hits) / static_cast<double>(samples);
}

// Product prod (1 - beta_i/2) in extended precision.
inline double product_oracle(const std::vector<double>& betas) {
  long double p = 1.0L;
  for (double b : betas) p *= (1.0L - 0.5L * static_cast<long double>(b));
  return static_cast<double>(p);
}

// Diffusing-vortex swirl profile sigma(rho, t) with unit far-field plateau
// at circulation 2*pi.
inline double vortex_sigma(double rho, double t, double circulation, double t_shift) {
  return circulation / (2.0 * swirl::kPi) *
         (-std::expm1(-rho * rho / (4.0 * (t + t_shift))));
}

inline swirl::CylGrid make_grid(int n_rho, int n_z, double rho_max, double z_min,
                                double z_max) {
  swirl::CylGrid g;
  g.n_rho = n_rho;
  g.n_z = n_z;
  g.rho_max = rho_max;
  g.z_min = z_min;
  g.z_max = z_max;
  return g;
}

// Analytic snapshot series: one field of the given kind per time level.
inline swirl::SnapshotSeries
analytic_series(const swirl::CylGrid& g, swirl::FieldKind kind,
                const std::vector<double>& times,
                const std::function<double(double, double, double)>& f) {
  swirl::SnapshotSeries s;
  for (double t : times) {
    swirl::Snapshot snap;
    snap.time = t;
    snap.fields.push_back(swirl::Field::sampled(
        g, kind, t, [&](double rho, double z) { return f(rho, z, t); }));
    s.add(std::move(snap));
  }
  return s;
}

// Velocity series (v_rho, v_phi, v_axial and pressure) from per-component
// closed forms.
inline swirl::SnapshotSeries velocity_series(
    const swirl::CylGrid& g, const std::vector<double>& times,
    const std::function<double(swirl::FieldKind, double, double, double)>& f) {
  swirl::SnapshotSeries s;
  for (double t : times) {
    swirl::Snapshot snap;
    snap.time = t;
    for (auto k : {swirl::FieldKind::v_rho, swirl::FieldKind::v_phi,
                   swirl::FieldKind::v_axial, swirl::FieldKind::pressure,
                   swirl::FieldKind::swirl})
      snap.fields.push_back(swirl::Field::sampled(
          g, k, t, [&](double rho, double z) { return f(k, rho, z, t); }));
    s.add(std::move(snap));
  }
  return s;
}

inline std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out;
  for (int k = 0; k < n; ++k)
    out.push_back(a + (b - a) * static_cast<double>(k) / static_cast<double>(n - 1));
  return out;
}

} // namespace oracle
