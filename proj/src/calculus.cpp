#include "swirl/calculus.hpp"

namespace swirl {
namespace {

// Shared per-row kernels: the OpenMP wrappers and the serial references run
// the same rows in the same arithmetic order, so they agree bitwise.

void laplacian_row(const Field& f, Field& out, int i) {
  const CylGrid& g = f.grid();
  const double hr = g.h_rho(), hz = g.h_z();
  const double ihr2 = 1.0 / (hr * hr), ihz2 = 1.0 / (hz * hz);
  const int nj = f.nj();
  if (i == 0) {
    if (axis_parity(f.kind()) < 0) return; // pinned odd kinds: axis row stays 0
    for (int j = 1; j < nj - 1; ++j) {
      const double dzz = (f(0, j + 1) - 2.0 * f(0, j) + f(0, j - 1)) * ihz2;
      out(0, j) = 4.0 * (f(1, j) - f(0, j)) * ihr2 + dzz;
    }
    return;
  }
  const double rho = g.rho(i);
  for (int j = 1; j < nj - 1; ++j) {
    const double drr = (f(i + 1, j) - 2.0 * f(i, j) + f(i - 1, j)) * ihr2;
    const double dr = (f(i + 1, j) - f(i - 1, j)) / (2.0 * hr);
    const double dzz = (f(i, j + 1) - 2.0 * f(i, j) + f(i, j - 1)) * ihz2;
    out(i, j) = drr + dr / rho + dzz;
  }
}

void gradient_row(const Field& f, Field& dr, Field& dz, int i) {
  const CylGrid& g = f.grid();
  const double hr = g.h_rho(), hz = g.h_z();
  const int ni = f.ni(), nj = f.nj();
  for (int j = 0; j < nj; ++j) {
    if (i == 0)
      dr(0, j) = axis_parity(f.kind()) < 0 ? f(1, j) / hr : 0.0;
    else if (i == ni - 1)
      dr(i, j) = (3.0 * f(i, j) - 4.0 * f(i - 1, j) + f(i - 2, j)) / (2.0 * hr);
    else
      dr(i, j) = (f(i + 1, j) - f(i - 1, j)) / (2.0 * hr);

    if (j == 0)
      dz(i, j) = (-3.0 * f(i, 0) + 4.0 * f(i, 1) - f(i, 2)) / (2.0 * hz);
    else if (j == nj - 1)
      dz(i, j) = (3.0 * f(i, j) - 4.0 * f(i, j - 1) + f(i, j - 2)) / (2.0 * hz);
    else
      dz(i, j) = (f(i, j + 1) - f(i, j - 1)) / (2.0 * hz);
  }
}

void divergence_row(const Field& vr, const Field& vz, Field& out, int i) {
  const CylGrid& g = vr.grid();
  const double hr = g.h_rho(), hz = g.h_z();
  const int nj = vr.nj();
  if (i == 0) {
    // axis limit 2 d_rho v_rho with the second-order one-sided derivative
    // (v_rho(0) = 0); the first-order closure 2 v_rho(1)/h leaves an O(h)
    // line defect that the projection iteration contracts poorly
    for (int j = 1; j < nj - 1; ++j) {
      const double dvz = (vz(0, j + 1) - vz(0, j - 1)) / (2.0 * hz);
      out(0, j) = (4.0 * vr(1, j) - vr(2, j)) / hr + dvz;
    }
    return;
  }
  const double rho = g.rho(i);
  for (int j = 1; j < nj - 1; ++j) {
    const double dvr = (vr(i + 1, j) - vr(i - 1, j)) / (2.0 * hr);
    const double dvz = (vz(i, j + 1) - vz(i, j - 1)) / (2.0 * hz);
    out(i, j) = dvr + vr(i, j) / rho + dvz;
  }
}

void check_velocity_kinds(const Field& vr, const Field& vp, const Field& vz) {
  if (vr.kind() != FieldKind::v_rho || vp.kind() != FieldKind::v_phi ||
      vz.kind() != FieldKind::v_axial)
    throw ContractError("divergence: expected (v_rho, v_phi, v_axial) fields");
  if (!vr.same_shape(vp) || !vr.same_shape(vz))
    throw ContractError("divergence: component shapes differ");
}

} // namespace

Field cyl_laplacian(const Field& f) {
  Field out(f.grid(), f.kind(), f.time());
  const int ni = f.ni();
#pragma omp parallel for schedule(static)
  for (int i = 0; i < ni - 1; ++i) laplacian_row(f, out, i);
  return out;
}

std::pair<Field, Field> cyl_gradient(const Field& f) {
  Field dr(f.grid(), FieldKind::scalar, f.time());
  Field dz(f.grid(), FieldKind::scalar, f.time());
  const int ni = f.ni();
#pragma omp parallel for schedule(static)
  for (int i = 0; i < ni; ++i) gradient_row(f, dr, dz, i);
  return {std::move(dr), std::move(dz)};
}

Field divergence(const Field& v_rho, const Field& v_phi, const Field& v_axial) {
  check_velocity_kinds(v_rho, v_phi, v_axial);
  Field out(v_rho.grid(), FieldKind::scalar, v_rho.time());
  const int ni = v_rho.ni();
#pragma omp parallel for schedule(static)
  for (int i = 0; i < ni - 1; ++i) divergence_row(v_rho, v_axial, out, i);
  return out;
}

namespace ref {

Field cyl_laplacian(const Field& f) {
  Field out(f.grid(), f.kind(), f.time());
  for (int i = 0; i < f.ni() - 1; ++i) laplacian_row(f, out, i);
  return out;
}

std::pair<Field, Field> cyl_gradient(const Field& f) {
  Field dr(f.grid(), FieldKind::scalar, f.time());
  Field dz(f.grid(), FieldKind::scalar, f.time());
  for (int i = 0; i < f.ni(); ++i) gradient_row(f, dr, dz, i);
  return {std::move(dr), std::move(dz)};
}

Field divergence(const Field& v_rho, const Field& v_phi, const Field& v_axial) {
  check_velocity_kinds(v_rho, v_phi, v_axial);
  Field out(v_rho.grid(), FieldKind::scalar, v_rho.time());
  for (int i = 0; i < v_rho.ni() - 1; ++i) divergence_row(v_rho, v_axial, out, i);
  return out;
}

} // namespace ref
} // namespace swirl
