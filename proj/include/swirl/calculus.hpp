#pragma once

#include <utility>

#include "swirl/field.hpp"

namespace swirl {

/// Axisymmetric Laplacian  d_rr + (1/rho) d_r + d_zz  by second-order
/// centered differences.  The axis node uses the even-reflection limit
/// 2 d_rr + d_zz (so 4(f1-f0)/h^2 for even kinds); axis rows of pinned odd
/// kinds and all outer-boundary rows are left 0.  No evaluation divides by
/// rho at the axis.
Field cyl_laplacian(const Field& f);

/// Centered (d_rho, d_z) gradient pair; second-order one-sided stencils on
/// the outer boundaries, parity reflection at the axis.
std::pair<Field, Field> cyl_gradient(const Field& f);

/// div v = d_rho v_rho + v_rho/rho + d_z v_axial with the axis limit
/// 2 d_rho v_rho + d_z v_axial.  Throws ContractError on kind mismatch.
Field divergence(const Field& v_rho, const Field& v_phi, const Field& v_axial);

// Serial reference implementations, kept for testing the parallel kernels.
namespace ref {
Field cyl_laplacian(const Field& f);
std::pair<Field, Field> cyl_gradient(const Field& f);
Field divergence(const Field& v_rho, const Field& v_phi, const Field& v_axial);
} // namespace ref

} // namespace swirl
