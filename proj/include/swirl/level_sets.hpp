#pragma once

#include <cstddef>
#include <vector>

#include "swirl/criterion.hpp"

namespace swirl {

/// Measures of the level sets e_kappa(t) = {x in C(R): pi(x,t) >= kappa k_R}
/// over the window ]t0 - R^2, t0 - (3/4) R^2[, with the space-time set
/// E_kappa and the maximizing time t_bar.  Measures are node-cell volumes
/// with the 2*pi*rho Jacobian.
struct LevelSetReport {
  double R = 0.0, kappa = 0.0, k_R = 0.0;
  std::vector<double> times;      // covered snapshot times in the window
  std::vector<double> e_measure;  // |e_kappa(t)| per covered snapshot
  std::vector<double> e_fraction; // vs |C(R)|
  double E_measure = 0.0;         // space-time measure of E_kappa
  double E_fraction = 0.0;        // vs |Q^{1,1/4}(R)| = |C(R)| R^2/4
  double region_measure = 0.0;    // |C(R)| = 2 pi R^3
  double window_measure = 0.0;    // |C(R)| * R^2/4
  double t_bar = 0.0;             // argmax_t |e_kappa(t)|
  std::size_t t_bar_index = 0;    // index into times
  bool mean_value_ok = false;     // |e(t_bar)| * R^2/4 >= |E_kappa|
};

/// Requires pi >= 0 on the probed region (ContractError) and k_R > 0.
LevelSetReport level_sets(const SnapshotSeries& pi, const ProbePoint& z0, double R,
                          double kappa, double k_R, FieldKind kind = FieldKind::scalar);

} // namespace swirl
