#pragma once

#include <map>
#include <string>
#include <vector>

#include "swirl/level_sets.hpp"
#include "swirl/moser.hpp"

namespace swirl {

/// One hypothesis/conclusion pair evaluated on data.  A row is a failure
/// event only when it was evaluated, the hypothesis holds and the conclusion
/// fails beyond the discretization slack.
struct LemmaRow {
  std::string lemma;
  std::string status = "evaluated"; // or "skipped: <reason>"
  bool hypothesis_holds = false;
  bool conclusion_holds = false;
  std::map<std::string, double> margins;

  bool failure() const {
    return status == "evaluated" && hypothesis_holds && !conclusion_holds;
  }
};

struct HarnessParams {
  ProbePoint probe;
  double R = 1.0 / 6.0;
  double k_R = 1.0;
  double c = 1.0;
  GaugeParams gauge;

  // cylinder/iteration parameters of the individual checks
  double tau1 = 1.0, tau = 1.5, gamma1 = 1.0, gamma = 2.0;
  double delta0 = 1.0 / 3.0;
  double delta1 = 1.0 / 3.0, mu1 = 0.1, theta1 = 1.0;
  double lambda1 = 0.75;
};

struct GrowthLedger {
  HarnessParams params;
  double f2R = 0.0, M2R = 0.0, M0 = 1.0;
  std::vector<LemmaRow> rows;

  bool any_failure() const {
    for (const auto& r : rows)
      if (r.failure()) return true;
    return false;
  }
};

/// Evaluate the growth/level-set statements numerically on a solved
/// nonnegative scalar pi:
///   sup-bound             sup of the truncation vs the mean-power bound
///   growth-persistence    large-measure positivity propagates in time
///   measure-shrink        sub-level measure after s halvings of the level
///   measure-to-pointwise  small sub-level measure forces a pointwise bound
///   level-set-density     a definite-measure level set at some t_bar
/// Each row reports hypothesis-holds / conclusion-holds plus margins.
/// Measure comparisons carry a slack of one boundary-cell layer (nodal level
/// sets jitter at cell scale).
///
/// Gate: pi must be >= 0 on Q(2R) and k_R > 0 (ContractError), and pi must
/// dominate k_R on the axis inside Q(2R); otherwise all rows are skipped
/// with a precondition report.  `velocity` (for f(2R), M(2R)) may be null;
/// the norms are then taken as 0 (a zero background field).
GrowthLedger verify_growth_lemmas(const SnapshotSeries& pi_series,
                                  const SnapshotSeries* velocity,
                                  const HarnessParams& params);

/// Canonical pi construction from a solved swirl field: with M = sup and
/// m = inf of sigma over Q(probe, 2R),
///   pi = M - sigma,  k_R = (M - m)/2,  M0 = 2.
/// pi is nonnegative on Q(2R), solves the same drift-diffusion equation, and
/// dominates k_R on the axis whenever sigma >= 0 there.
struct PiConstruction {
  SnapshotSeries pi;
  double k_R = 0.0;
  double M0 = 2.0;
  double sigma_sup = 0.0, sigma_inf = 0.0;
};

PiConstruction pi_from_swirl(const SnapshotSeries& run, const ProbePoint& probe, double R);

} // namespace swirl
