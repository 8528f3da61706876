#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "swirl/grid.hpp"

namespace swirl {

enum class FieldKind : std::uint32_t {
  v_rho = 0,
  v_phi = 1,
  v_axial = 2,
  pressure = 3,
  swirl = 4,  // sigma = rho * v_phi
  scalar = 5, // generic nonnegative scalar pi
};

const char* kind_name(FieldKind k);
FieldKind kind_from_name(const std::string& name);

/// Kinds whose value is pinned to 0 on the axis node line.
inline bool axis_pinned(FieldKind k) {
  return k == FieldKind::v_rho || k == FieldKind::v_phi || k == FieldKind::swirl;
}

/// Reflection parity across the axis, used by stencils: -1 odd, +1 even.
/// v_rho and v_phi flip sign under rho -> -rho; sigma = rho*v_phi and the
/// remaining scalars are even.
inline int axis_parity(FieldKind k) {
  return (k == FieldKind::v_rho || k == FieldKind::v_phi) ? -1 : +1;
}

/// One scalar sample array on a CylGrid at a single time level.
/// Row-major storage with the radial index major: value(i, j) for node
/// (rho_i, z_j).  Fields are treated as immutable snapshots once produced by
/// a solver or sampler; all diagnostics only read them.
class Field {
public:
  Field() = default;
  Field(const CylGrid& grid, FieldKind kind, double time);

  static Field sampled(const CylGrid& grid, FieldKind kind, double time,
                       const std::function<double(double rho, double z)>& f);

  double& operator()(int i, int j) { return v_[static_cast<std::size_t>(i) * nj_ + j]; }
  double operator()(int i, int j) const { return v_[static_cast<std::size_t>(i) * nj_ + j]; }

  std::span<double> values() { return v_; }
  std::span<const double> values() const { return v_; }

  const CylGrid& grid() const { return grid_; }
  FieldKind kind() const { return kind_; }
  double time() const { return time_; }
  void set_time(double t) { time_ = t; }

  int ni() const { return ni_; }
  int nj() const { return nj_; }

  /// Pin the axis row for kinds with a hard axis value (v_rho, v_phi, sigma).
  void enforce_axis();
  /// Largest |value| on the axis row for pinned kinds (0 for other kinds).
  double axis_violation() const;

  double max_abs() const;
  bool same_shape(const Field& o) const {
    return ni_ == o.ni_ && nj_ == o.nj_ && grid_.same_shape(o.grid_);
  }

private:
  CylGrid grid_{};
  FieldKind kind_ = FieldKind::scalar;
  double time_ = 0.0;
  int ni_ = 0, nj_ = 0;
  std::vector<double> v_;
};

/// All fields of one time level.
struct Snapshot {
  double time = 0.0;
  std::vector<Field> fields;

  const Field* find(FieldKind k) const;
  const Field& get(FieldKind k) const; // throws ContractError if absent
};

/// Time-ordered sequence of snapshots on one grid.
class SnapshotSeries {
public:
  void add(Snapshot s); // enforces increasing time and a consistent grid

  std::size_t size() const { return snaps_.size(); }
  bool empty() const { return snaps_.empty(); }
  const Snapshot& operator[](std::size_t k) const { return snaps_[k]; }
  Snapshot& operator[](std::size_t k) { return snaps_[k]; }

  double t_first() const;
  double t_last() const;
  const CylGrid& grid() const;
  std::vector<double> times() const;

  /// Index of the snapshot whose time is nearest to t.
  std::size_t nearest(double t) const;

private:
  std::vector<Snapshot> snaps_;
};

/// sigma = rho * v_phi nodewise (axis row is exactly 0).
Field swirl_from_vphi(const Field& v_phi);

/// Inverse map: v_phi = sigma / rho off-axis, v_phi(0,.) = 0.
Field vphi_from_swirl(const Field& sigma);

} // namespace swirl
