#pragma once

#include <cmath>

#include "swirl/errors.hpp"

namespace swirl {

inline constexpr double kPi = 3.14159265358979323846;

/// Uniform axisymmetric (rho, z) node grid with time-axis metadata.
/// Node i sits at rho = i*h_rho, the first radial node line being the axis
/// rho = 0; node j sits at z = z_min + j*h_z.  The cross-section covers the
/// cylinder {rho < rho_max, z_min < z < z_max}.
struct CylGrid {
  double rho_max = 1.0;
  double z_min = -1.0;
  double z_max = 1.0;
  int n_rho = 128; // cell count; nodes are 0..n_rho
  int n_z = 128;   // cell count; nodes are 0..n_z

  // Nominal time axis of a run on this grid (metadata; the solver may pick
  // a smaller dt from its stability bound).
  double dt = 0.0;
  double t_start = 0.0;
  double t_end = 0.0;

  double h_rho() const { return rho_max / n_rho; }
  double h_z() const { return (z_max - z_min) / n_z; }
  int ni() const { return n_rho + 1; }
  int nj() const { return n_z + 1; }
  double rho(int i) const { return i * h_rho(); }
  double z(int j) const { return z_min + j * h_z(); }

  void validate() const {
    if (!(rho_max > 0.0) || n_rho < 2 || n_z < 2 || !(z_max > z_min))
      throw ContractError("CylGrid: need rho_max>0, z_max>z_min, n_rho>=2, n_z>=2");
  }

  bool same_shape(const CylGrid& o) const {
    return n_rho == o.n_rho && n_z == o.n_z && rho_max == o.rho_max &&
           z_min == o.z_min && z_max == o.z_max;
  }
};

/// Backward parabolic cylinder Q^{lambda,mu}(z0, r): the spatial cylinder of
/// radius lambda*r and half-height lambda*r centered at the axis point
/// (0, z_center), times the time interval ]t_top - mu*r^2, t_top[.
///
/// Centers are restricted to the symmetry axis: every diagnostic in this
/// project probes axis points, and an off-axis center would break the
/// axisymmetric reduction of the quadrature.
struct ParabolicCylinder {
  double z_center = 0.0;
  double t_top = 0.0;
  double r = 0.0;
  double lambda = 1.0;
  double mu = 1.0;

  void validate() const {
    if (!(r > 0.0) || !(lambda > 0.0) || !(mu > 0.0))
      throw ContractError("ParabolicCylinder: need r>0, lambda>0, mu>0");
  }

  double spatial_radius() const { return lambda * r; }
  double z_lo() const { return z_center - lambda * r; }
  double z_hi() const { return z_center + lambda * r; }
  double t_lo() const { return t_top - mu * r * r; }
  double t_hi() const { return t_top; }

  /// |C(lambda r)| = pi (lambda r)^2 * 2 (lambda r)
  double space_volume() const {
    const double a = lambda * r;
    return 2.0 * kPi * a * a * a;
  }
  /// space-time measure |Q^{lambda,mu}(r)| = |C(lambda r)| * mu r^2
  double spacetime_volume() const { return space_volume() * mu * r * r; }
};

/// Annular cylinder P(a,b;h) = {a < |x'| < b, |z - z_center| < h} with an
/// optional time window; the solid cylinder is the degenerate case a = 0.
struct AnnularCylinder {
  double a = 0.0;
  double b = 1.0;
  double half_height = 1.0;
  double z_center = 0.0;
  double t_lo = 0.0;
  double t_hi = 0.0;

  void validate() const {
    if (!(a >= 0.0) || !(b > a) || !(half_height > 0.0))
      throw ContractError("AnnularCylinder: need 0 <= a < b, half_height > 0");
  }

  double space_volume() const { return kPi * (b * b - a * a) * 2.0 * half_height; }
  double spacetime_volume() const { return space_volume() * (t_hi - t_lo); }
};

/// Spatial volume of Q's cross-section cylinder; r = 0 degenerates to 0.
inline double cyl_volume(double radius) {
  if (radius <= 0.0) return 0.0;
  return 2.0 * kPi * radius * radius * radius;
}

inline double cyl_volume(const ParabolicCylinder& q) {
  if (q.r <= 0.0) return 0.0;
  return q.space_volume();
}

inline double cyl_volume(const AnnularCylinder& p) {
  p.validate();
  return p.space_volume();
}

/// Space-time measure of a parabolic cylinder.
inline double cyl_spacetime_measure(const ParabolicCylinder& q) {
  if (q.r <= 0.0) return 0.0;
  return q.spacetime_volume();
}

} // namespace swirl
